"""Words, successor sets, and interior words.

A word w of labels 1..m addresses the piece A_w.  The neighborhood of an
interior piece follows the recursion  N_{wi} = N_i union S(N_w, i)  where
S(M, i) is the set of i-successors in the neighbor graph.  A word is
interior when no edge path starting at a non-identity vertex carries its
labels, i.e. iterating S from the full non-identity vertex set along w
reaches the empty set.

Vertex sets are bitmasks internally: bit k stands for vertex k+1 of the
graph (the identity, vertex 0, never occurs in a neighborhood).
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Sequence

from .errors import FrontierExceededError, NoInteriorWordError
from .neighbor import NeighborGraph

Word = tuple[int, ...]

DEFAULT_FRONTIER_CAP = 10**6


def parse_word(text: str, m: int) -> Word:
    """Digit-string words like "214"; valid for alphabets up to 9 labels."""
    if m > 9:
        raise ValueError("digit-string words need m <= 9")
    if not text or not text.isdigit():
        raise ValueError(f"not a word: {text!r}")
    word = tuple(int(c) for c in text)
    for letter in word:
        if not 1 <= letter <= m:
            raise ValueError(f"letter {letter} outside 1..{m}")
    return word


def format_word(word: Sequence[int]) -> str:
    return "".join(str(letter) for letter in word)


def set_to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        if v <= 0:
            raise ValueError("vertex sets hold non-identity vertices (index >= 1)")
        mask |= 1 << (v - 1)
    return mask


def mask_to_set(mask: int) -> frozenset[int]:
    out = set()
    while mask:
        low = mask & -mask
        out.add(low.bit_length())
        mask ^= low
    return frozenset(out)


def successor_mask(g: NeighborGraph, mask: int, i: int) -> int:
    """S(M, i) on bitmasks: union of per-vertex successor masks."""
    masks = g.successor_masks[i - 1]
    out = 0
    while mask:
        low = mask & -mask
        out |= masks[low.bit_length()]
        mask ^= low
    return out


def successor_set(g: NeighborGraph, M: Iterable[int], i: int) -> frozenset[int]:
    """The i-successors of a vertex set M.

    M may be {0} (the identity alone), giving the first-level set N_i; the
    identity's flagged self-loops never contribute, so the identity is never
    a member of any result.
    """
    Mset = frozenset(M)
    if not 1 <= i <= g.m:
        raise ValueError(f"label {i} outside 1..{g.m}")
    if 0 in Mset:
        if Mset != {0}:
            raise ValueError("the identity may only appear alone")
        return mask_to_set(g.base_mask(i))
    return mask_to_set(successor_mask(g, set_to_mask(Mset), i))


def neighborhood_mask_of_word(g: NeighborGraph, word: Sequence[int]) -> int:
    if not word:
        raise ValueError("the empty word has no neighborhood")
    mask = g.base_mask(word[0])
    for i in word[1:]:
        mask = g.base_mask(i) | successor_mask(g, mask, i)
    return mask


def neighborhood_of_word(g: NeighborGraph, word: Sequence[int]) -> frozenset[int]:
    """Fold of the neighborhood recursion along ``word``; for interior words
    this is the complete set of neighbor maps of the piece A_w."""
    return mask_to_set(neighborhood_mask_of_word(g, word))


def is_interior_word(g: NeighborGraph, word: Sequence[int]) -> bool:
    """True when no boundary set survives inside A_w: iterating successor
    sets from all non-identity vertices along ``word`` reaches the empty set
    (and stays there; emptiness is stable)."""
    if not word:
        return g.n_vertices == 1
    mask = (1 << (g.n_vertices - 1)) - 1
    for i in word:
        if mask == 0:
            return True
        mask = successor_mask(g, mask, i)
    return mask == 0


def find_interior_word(
    g: NeighborGraph, frontier_cap: int = DEFAULT_FRONTIER_CAP
) -> Word:
    """The shortest interior word, lexicographically least among shortest.

    Breadth-first subset construction from the full non-identity vertex set;
    raises ``FrontierExceededError`` past ``frontier_cap`` states and
    ``NoInteriorWordError`` when the automaton closes without emptying.
    """
    start = (1 << (g.n_vertices - 1)) - 1
    if start == 0:
        return (1,)
    seen = {start}
    queue: deque[tuple[int, Word]] = deque([(start, ())])
    while queue:
        mask, word = queue.popleft()
        for i in range(1, g.m + 1):
            nxt = successor_mask(g, mask, i)
            if nxt == 0:
                return word + (i,)
            if nxt not in seen:
                if len(seen) >= frontier_cap:
                    raise FrontierExceededError(frontier_cap)
                seen.add(nxt)
                queue.append((nxt, word + (i,)))
    raise NoInteriorWordError(
        "the successor automaton never empties; the attractor has no interior piece"
    )

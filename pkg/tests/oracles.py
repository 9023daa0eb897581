"""Independent slow re-derivations used to validate the fast construction.

Candidate maps come from exact word-pair algebra; the nonempty-intersection
test finds touching piece pairs with a KD-tree over a dense point cloud,
nothing from the graph builder.  Expected values frozen in the test files
were produced by these helpers.
"""

from __future__ import annotations

from itertools import product

import numpy as np
from scipy.spatial import cKDTree

from selfsim.exact import IfsSpec, PlanarMap, attractor_radius, compose_word

MapKey = tuple[complex, bool, complex]

CLOUD_DEPTH = 8


def map_key(f: PlanarMap) -> MapKey:
    u, conj, t = f.to_floats()
    return (complex(round(u.real, 9), round(u.imag, 9)), conj,
            complex(round(t.real, 9), round(t.imag, 9)))


def cloud(spec: IfsSpec, depth: int) -> np.ndarray:
    """Images of 0 under every word of the given length.

    Index digits in base m give the word, most significant digit first, so
    the block of indices sharing a prefix is the subcloud of that piece.
    Every point lies within 2 R r^depth of the attractor and vice versa.
    """
    pts = np.zeros(1, dtype=np.complex128)
    maps = [f.to_floats() for f in spec.maps]
    for _ in range(depth):
        layers = []
        for u, conj, t in maps:
            layers.append(u * (np.conj(pts) if conj else pts) + t)
        pts = np.concatenate(layers)
    return pts


def touching_piece_pairs(
    spec: IfsSpec, level: int, cloud_depth: int = CLOUD_DEPTH
) -> set[tuple[int, int]]:
    """Unordered pairs of distinct level-``level`` piece ids whose pieces
    intersect, detected on the cloud.

    Touching pieces have cloud points within 4 R r^depth of each other
    (two cloud errors); candidates on a dyadic grid that do not touch are
    separated by at least the level's grid step, far above the threshold.
    """
    radius = float(attractor_radius(spec))
    pts = cloud(spec, cloud_depth)
    tol = 4.0 * radius * spec.r**cloud_depth
    tree = cKDTree(np.column_stack([pts.real, pts.imag]))
    pairs = tree.query_pairs(tol, output_type="ndarray")
    shift = spec.m ** (cloud_depth - level)
    a = pairs[:, 0] // shift
    b = pairs[:, 1] // shift
    mixed = a != b
    lo = np.minimum(a[mixed], b[mixed])
    hi = np.maximum(a[mixed], b[mixed])
    n = spec.m**level
    packed = np.unique(lo * n + hi)
    return {(int(p) // n, int(p) % n) for p in packed}


def piece_word(piece_id: int, level: int, m: int) -> tuple[int, ...]:
    digits = []
    for _ in range(level):
        digits.append(piece_id % m + 1)
        piece_id //= m
    return tuple(reversed(digits))


def level_neighbor_maps(spec: IfsSpec, level: int) -> set[MapKey]:
    """All non-identity maps f_v^-1 f_w over word pairs of the given length
    whose pieces intersect, straight from the definition."""
    out: set[MapKey] = set()
    for a, b in touching_piece_pairs(spec, level):
        v = piece_word(a, level, spec.m)
        w = piece_word(b, level, spec.m)
        fv = compose_word(spec, v)
        fw = compose_word(spec, w)
        out.add(map_key(fv.invert().compose(fw)))
        out.add(map_key(fw.invert().compose(fv)))
    return out


def word_neighborhood_maps(spec: IfsSpec, word: tuple[int, ...]) -> set[MapKey]:
    """Neighbor maps of the piece A_word among all pieces of its level."""
    level = len(word)
    target = 0
    for letter in word:
        target = target * spec.m + (letter - 1)
    inv = compose_word(spec, word).invert()
    out: set[MapKey] = set()
    for a, b in touching_piece_pairs(spec, level):
        other = b if a == target else a if b == target else None
        if other is None:
            continue
        h = inv.compose(compose_word(spec, piece_word(other, level, spec.m)))
        out.add(map_key(h))
    return out


def graph_reach_keys(g, length: int) -> set[MapKey]:
    """Map keys of graph vertices reachable from the identity by an edge
    path of exactly the given length.

    The identity's self-loops count as steps: word pairs sharing a prefix
    realize shorter neighbor maps again at deeper levels.
    """
    frontier = {0}
    for _ in range(length):
        nxt = set()
        for v in frontier:
            if v == 0:
                nxt.add(0)
            for target, _, _ in g.out_edges[v]:
                nxt.add(target)
        frontier = nxt
    return {map_key(g.vertices[v]) for v in frontier if v != 0}


def union_area(spec: IfsSpec, depth: int) -> float:
    """Area of the union of piece bounding squares at one level; converges
    to the attractor's area for tiles."""
    from shapely.geometry import box
    from shapely.ops import unary_union

    radius = float(attractor_radius(spec))
    rad = radius * spec.r**depth
    pieces = []
    for w in product(range(1, spec.m + 1), repeat=depth):
        _, _, t = compose_word(spec, w).to_floats()
        pieces.append(box(t.real - rad, t.imag - rad, t.real + rad, t.imag + rad))
    return float(unary_union(pieces).area)

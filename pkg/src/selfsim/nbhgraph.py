"""The neighborhood graph: every neighborhood of interior pieces, with
substitution dynamics and stationary frequencies.

Starting from one interior word's neighborhood, the worklist closure under
N_{wi} = N_i union S(N_w, i) interns every reachable neighborhood.  The
K x m successor table induces the substitution matrix s[k][p] = #{i :
successor(k, i) = p} whose rows sum to m; the normalized left eigenvector
for eigenvalue m gives the frequency of each neighborhood among deep
interior pieces.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np
import scipy.sparse

from . import _kernels
from ._ratsolve import stationary_exact
from .errors import NonConvergenceError, SeedNotInteriorError
from .exact import PlanarMap
from .interior import (
    Word,
    find_interior_word,
    is_interior_word,
    mask_to_set,
    neighborhood_mask_of_word,
)
from .neighbor import NeighborGraph

DEFAULT_WORKLIST_CAP = 10**6
EXACT_SIZE_LIMIT = 512
FLOAT_TOLERANCE = 1e-12
MAX_ITERATIONS = 10**6


@dataclass
class StationaryDistribution:
    """Left eigenvector of the substitution chain, normalized to sum 1.

    ``values`` holds Fractions when the solve was exact (K <= 512), floats
    otherwise; ``as_floats`` is always available.
    """

    values: list
    exact: bool
    iterations: int = 0
    residual: float = 0.0

    @cached_property
    def as_floats(self) -> np.ndarray:
        return np.array([float(v) for v in self.values])


@dataclass
class StatsReport:
    """Stationary-weighted neighborhood statistics (paper-style summary)."""

    K: int
    min_nbrs: int
    max_nbrs: int
    avg_nbrs: float
    bucket_freq: tuple[float, float, float]
    heavy_threshold: int
    heavy_freq: float
    leading: list[tuple[int, float]]

    def as_dict(self) -> dict:
        return {
            "K": self.K,
            "minNbrs": self.min_nbrs,
            "maxNbrs": self.max_nbrs,
            "avgNbrs": self.avg_nbrs,
            "bucketFreq": list(self.bucket_freq),
            "heavyThreshold": self.heavy_threshold,
            "heavyFreq": self.heavy_freq,
            "leading": [[k, p] for k, p in self.leading],
        }


class NeighborhoodGraph:
    """Interned neighborhoods with their successor table.

    Public indices are 1-based (index 1 is the seed word's neighborhood,
    the rest in worklist discovery order); members are vertex indices of
    the underlying (possibly continuum-restricted) neighbor graph.
    """

    def __init__(
        self,
        g: NeighborGraph,
        seed_word: Word,
        masks: list[int],
        successor_rows: list[list[int]],
    ):
        self.g = g
        self.seed_word = seed_word
        self.masks = masks
        self._successor = np.asarray(successor_rows, dtype=np.int64)

    @property
    def K(self) -> int:
        return len(self.masks)

    @property
    def m(self) -> int:
        return self.g.m

    def successor(self, k: int, i: int) -> int:
        """1-based: the neighborhood of child i of a piece with neighborhood k."""
        if not 1 <= k <= self.K:
            raise ValueError(f"neighborhood index {k} outside 1..{self.K}")
        if not 1 <= i <= self.m:
            raise ValueError(f"child label {i} outside 1..{self.m}")
        return int(self._successor[k - 1, i - 1]) + 1

    @property
    def successor_table(self) -> np.ndarray:
        """K x m array of 0-based successor indices (internal layout)."""
        return self._successor

    def members(self, k: int) -> tuple[int, ...]:
        """Sorted vertex indices of neighborhood k."""
        return tuple(sorted(mask_to_set(self.masks[k - 1])))

    def member_maps(self, k: int) -> list[PlanarMap]:
        return [self.g.vertices[v] for v in self.members(k)]

    def size(self, k: int) -> int:
        return self.masks[k - 1].bit_count()

    @cached_property
    def sizes(self) -> np.ndarray:
        return np.array([mask.bit_count() for mask in self.masks], dtype=np.int64)

    @cached_property
    def substitution_counts(self) -> list[list[tuple[int, int]]]:
        """Per row k (0-based): (target, count) pairs; row sums equal m."""
        out: list[list[tuple[int, int]]] = []
        for row in self._successor:
            counts: dict[int, int] = {}
            for target in row:
                counts[int(target)] = counts.get(int(target), 0) + 1
            out.append(sorted(counts.items()))
        return out

    def substitution_triples(self) -> list[tuple[int, int, int]]:
        """Sparse (row, col, count) triples with 1-based indices."""
        return [
            (k + 1, target + 1, count)
            for k, items in enumerate(self.substitution_counts)
            for target, count in items
        ]

    @cached_property
    def incoming_edges(self) -> list[list[tuple[int, int]]]:
        """Per neighborhood k (1-based list at k-1): (parent, child label)
        pairs with successor(parent, label) = k, one entry per label."""
        incoming: list[list[tuple[int, int]]] = [[] for _ in range(self.K)]
        for k0 in range(self.K):
            for i0 in range(self.m):
                target = int(self._successor[k0, i0])
                incoming[target].append((k0 + 1, i0 + 1))
        return incoming

    @cached_property
    def stationary(self) -> StationaryDistribution:
        if self.K <= EXACT_SIZE_LIMIT:
            values = stationary_exact(self.substitution_counts, self.m)
            return StationaryDistribution(values=values, exact=True)
        return self._stationary_float()

    def _stationary_float(self) -> StationaryDistribution:
        K, m = self.K, self.m
        rows = np.repeat(np.arange(K, dtype=np.int64), m)
        cols = self._successor.reshape(-1)
        data = np.full(K * m, 1.0 / m)
        # Transposed transition matrix: right-multiplication steps the
        # distribution forward.
        PT = scipy.sparse.csr_matrix(
            (data, (cols, rows)), shape=(K, K)
        )
        v = np.full(K, 1.0 / K)
        for iteration in range(1, MAX_ITERATIONS + 1):
            w = PT @ v
            residual = float(np.max(np.abs(w - v)))
            # Damped update keeps periodic chains converging; the fixed
            # point is unchanged.
            v = 0.5 * (w + v)
            v /= v.sum()
            if residual <= FLOAT_TOLERANCE:
                return StationaryDistribution(
                    values=v.tolist(),
                    exact=False,
                    iterations=iteration,
                    residual=residual,
                )
        raise NonConvergenceError(MAX_ITERATIONS, residual)

    def stats(self) -> StatsReport:
        sizes = self.sizes
        p = self.stationary.as_floats
        max_nbrs = int(sizes.max())
        min_nbrs = int(sizes.min())
        # Integer threshold consistent with the printed tables: strictly
        # more than ceil(2*max/3) neighbors counts as heavy.
        threshold = -(-2 * max_nbrs // 3)
        heavy = float(p[sizes > threshold].sum())
        buckets = tuple(float(p[sizes == s].sum()) for s in (1, 2, 3))
        order = sorted(range(self.K), key=lambda k: (-p[k], k))
        leading = [(k + 1, float(p[k])) for k in order[:3]]
        return StatsReport(
            K=self.K,
            min_nbrs=min_nbrs,
            max_nbrs=max_nbrs,
            avg_nbrs=float((sizes * p).sum()),
            bucket_freq=buckets,
            heavy_threshold=threshold,
            heavy_freq=heavy,
            leading=leading,
        )

    def find_index(self, members: Sequence[int]) -> int | None:
        """1-based index of the neighborhood with exactly these members."""
        mask = 0
        for v in members:
            mask |= 1 << (v - 1)
        try:
            return self.masks.index(mask) + 1
        except ValueError:
            return None


def build_neighborhood_graph(
    g: NeighborGraph,
    seed_word: Word | None = None,
    worklist_cap: int = DEFAULT_WORKLIST_CAP,
) -> NeighborhoodGraph:
    """Worklist closure of all neighborhoods reachable from an interior seed.

    ``seed_word`` defaults to the shortest interior word; a supplied word
    must be interior (``SeedNotInteriorError`` otherwise).
    """
    if seed_word is None:
        seed_word = find_interior_word(g)
    else:
        seed_word = tuple(seed_word)
        if not is_interior_word(g, seed_word):
            raise SeedNotInteriorError(
                f"word {''.join(map(str, seed_word))} is not interior"
            )
    seed_mask = neighborhood_mask_of_word(g, seed_word)
    base_masks = [g.base_mask(i) for i in range(1, g.m + 1)]
    masks, successor_rows = _kernels.nbh_closure(
        g.m,
        g.successor_masks,
        base_masks,
        seed_mask,
        worklist_cap,
        g.n_vertices - 1,
    )
    return NeighborhoodGraph(g, seed_word, masks, successor_rows)

"""Neighbor maps and the boundary automaton of a finite-type IFS.

A neighbor map is an isometry h = f_v^-1 f_w for equal-length words v, w
whose pieces touch: A intersects h(A).  Finitely many such maps exist for
finite-type systems; they are found by breadth-first expansion
h' = f_i^-1 h f_j from the first-level candidates, pruned by the exact
translation bound |t| <= 2R, and kept when an infinite edge path (a path
reaching a cycle) certifies a nonempty intersection.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from functools import cached_property
import math

import numpy as np

from .errors import NotFiniteTypeError, OverlapError
from .exact import (
    IfsSpec,
    PlanarMap,
    attractor_radius,
)

DEFAULT_CANDIDATE_CAP = 100_000

CONTINUUM = "continuum"
POINT = "point"


class VertexClass:
    """Classification of one neighbor map's boundary set."""

    __slots__ = ("kind", "dimension")

    def __init__(self, kind: str, dimension: float):
        self.kind = kind
        self.dimension = dimension

    def __repr__(self):
        return f"VertexClass({self.kind!r}, {self.dimension:.6f})"


class NeighborGraph:
    """The boundary automaton: identity plus neighbor maps, with labeled edges.

    Vertices are planar isometries, index 0 the identity.  An edge
    (a, b, i, j) means  vertex_b = f_i^-1 vertex_a f_j : the part of a's
    boundary set inside piece i continues as b's boundary set.  The
    identity's defining (i, i) self-loops are stored first and flagged;
    every count and successor computation excludes them.
    """

    def __init__(
        self,
        spec: IfsSpec,
        radius: Fraction,
        vertices: list[PlanarMap],
        edges: list[tuple[int, int, int, int]],
        n_id_loops: int,
        filter_kind: str = "all",
        inherited_classes: list[VertexClass] | None = None,
        overlap_witnesses: tuple[tuple[PlanarMap, int, int], ...] = (),
    ):
        self.spec = spec
        self.radius = radius
        self.vertices = vertices
        self.edges = edges
        self.n_id_loops = n_id_loops
        self.filter_kind = filter_kind
        self.overlap_witnesses = overlap_witnesses
        self._inherited_classes = inherited_classes
        self._index = {f: k for k, f in enumerate(vertices)}

    @property
    def overlap_detected(self) -> bool:
        """True when some expansion chain reached the identity: two distinct
        equal-length words then compose to the same map, so two pieces of the
        attractor coincide exactly.  The graph is still built (the offending
        edges are dropped), but measure-based conclusions are unreliable."""
        return bool(self.overlap_witnesses)

    # -- basic views --------------------------------------------------------

    @property
    def m(self) -> int:
        return self.spec.m

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def counted_edges(self) -> list[tuple[int, int, int, int]]:
        """All edges except the flagged identity self-loops."""
        return self.edges[self.n_id_loops :]

    @property
    def n_edges(self) -> int:
        return len(self.edges) - self.n_id_loops

    def index_of(self, f: PlanarMap) -> int | None:
        return self._index.get(f)

    def __contains__(self, f: PlanarMap) -> bool:
        return f in self._index

    @cached_property
    def out_edges(self) -> list[list[tuple[int, int, int]]]:
        """Per vertex: list of (target, i, j) over counted edges."""
        out: list[list[tuple[int, int, int]]] = [[] for _ in self.vertices]
        for a, b, i, j in self.counted_edges:
            out[a].append((b, i, j))
        return out

    @cached_property
    def successor_masks(self) -> list[list[int]]:
        """successor_masks[i-1][a] = bitmask of targets of counted (a,*,i,*)
        edges, bit b-1 for vertex b.  The identity never appears as a target
        (its only incoming edges are the flagged loops), so masks range over
        non-id vertices."""
        masks = [[0] * self.n_vertices for _ in range(self.m)]
        for a, b, i, j in self.counted_edges:
            masks[i - 1][a] |= 1 << (b - 1)
        return masks

    def base_mask(self, i: int) -> int:
        """N_i as a bitmask: the i-successors of the identity."""
        return self.successor_masks[i - 1][0]

    # -- classification -----------------------------------------------------

    def _reachable(self, v: int) -> list[int]:
        seen = {v}
        order = [v]
        queue = deque([v])
        while queue:
            a = queue.popleft()
            for b, _, _ in self.out_edges[a]:
                if b not in seen:
                    seen.add(b)
                    order.append(b)
                    queue.append(b)
        return order

    def _spectral_radius(self, verts: list[int]) -> float:
        if not verts:
            return 0.0
        pos = {v: k for k, v in enumerate(verts)}
        mat = np.zeros((len(verts), len(verts)))
        for v in verts:
            for b, _, _ in self.out_edges[v]:
                if b in pos:
                    mat[pos[v], pos[b]] += 1.0
        return float(max(abs(np.linalg.eigvals(mat))))

    @cached_property
    def classes(self) -> list[VertexClass | None]:
        """Per-vertex classification; index 0 (identity) is None."""
        if self._inherited_classes is not None:
            return self._inherited_classes
        out: list[VertexClass | None] = [None]
        log_inv_r = -math.log(self.spec.r)
        for v in range(1, self.n_vertices):
            reach = self._reachable(v)
            if self._single_chain(v, reach):
                out.append(VertexClass(POINT, 0.0))
                continue
            rho = self._spectral_radius(reach)
            dim = max(math.log(rho) / log_inv_r, 0.0) if rho > 0 else 0.0
            out.append(VertexClass(CONTINUUM, dim))
        return out

    def _single_chain(self, v: int, reach: list[int]) -> bool:
        """True when exactly one edge path of every length n <= |reach| leaves
        v; the boundary set then holds a single address, a single point."""
        counts = {x: 1 for x in reach}
        for _ in range(len(reach)):
            counts = {
                x: sum(counts[b] for b, _, _ in self.out_edges[x] if b in counts)
                for x in reach
            }
            if counts[v] != 1:
                return False
        return True

    def vertex_class(self, v: int) -> VertexClass:
        if v == 0:
            raise ValueError("the identity vertex has no boundary set")
        cls = self.classes[v]
        assert cls is not None
        return cls

    @property
    def continuum_indices(self) -> list[int]:
        return [v for v in range(1, self.n_vertices) if self.classes[v].kind == CONTINUUM]

    @property
    def point_indices(self) -> list[int]:
        return [v for v in range(1, self.n_vertices) if self.classes[v].kind == POINT]

    def boundary_dimension(self) -> float | None:
        """ln(spectral radius of the non-id subgraph) / ln(1/r).

        None when there are no neighbor maps at all (empty boundary).
        """
        verts = list(range(1, self.n_vertices))
        if not verts:
            return None
        rho = self._spectral_radius(verts)
        return max(math.log(rho) / -math.log(self.spec.r), 0.0)

    def attractor_dimension(self) -> float:
        return math.log(self.m) / -math.log(self.spec.r)

    # -- restriction --------------------------------------------------------

    def restricted_to_continuum(self) -> "NeighborGraph":
        """The induced subgraph on continuum vertices, re-trimmed so every
        remaining non-id vertex still reaches a cycle.  This view ignores
        neighbors meeting the set in a single point."""
        keep = set(self.continuum_indices)
        edges = [
            (a, b, i, j)
            for a, b, i, j in self.counted_edges
            if (a == 0 or a in keep) and b in keep
        ]
        keep = _trim_to_cycles(keep, edges)
        edges = [
            (a, b, i, j)
            for a, b, i, j in edges
            if (a == 0 or a in keep) and b in keep
        ]
        order = [v for v in range(1, self.n_vertices) if v in keep]
        renum = {v: k + 1 for k, v in enumerate(order)}
        renum[0] = 0
        id_loops = self.edges[: self.n_id_loops]
        new_edges = list(id_loops) + [
            (renum[a], renum[b], i, j) for a, b, i, j in edges
        ]
        vertices = [self.vertices[0]] + [self.vertices[v] for v in order]
        classes: list[VertexClass | None] = [None] + [self.classes[v] for v in order]
        return NeighborGraph(
            self.spec,
            self.radius,
            vertices,
            new_edges,
            self.n_id_loops,
            filter_kind="continuum",
            inherited_classes=classes,
            overlap_witnesses=self.overlap_witnesses,
        )

    def view(self, filter_kind: str) -> "NeighborGraph":
        if filter_kind == "all":
            return self
        if filter_kind == "continuum":
            return self.restricted_to_continuum()
        raise ValueError(f"unknown filter {filter_kind!r}")

    # -- connectivity -------------------------------------------------------

    def is_connected(self) -> bool:
        """Whether the attractor is connected: the piece graph with an edge
        between i and j whenever f_i^-1 f_j is a neighbor map must be
        connected."""
        m = self.m
        parent = list(range(m + 1))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        inv = [self.spec.map_at(i).invert() for i in range(1, m + 1)]
        for i in range(1, m + 1):
            for j in range(i + 1, m + 1):
                if inv[i - 1].compose(self.spec.map_at(j)) in self._index:
                    parent[find(i)] = find(j)
        return len({find(i) for i in range(1, m + 1)}) == 1


def _trim_to_cycles(
    alive: set[int], edges: list[tuple[int, int, int, int]]
) -> set[int]:
    """Iteratively delete vertices with no outgoing edge into the alive set;
    what remains are exactly the vertices from which an infinite path exists."""
    out_count = {v: 0 for v in alive}
    incoming: dict[int, list[int]] = {v: [] for v in alive}
    for a, b, _, _ in edges:
        if a in out_count and b in out_count:
            out_count[a] += 1
            incoming[b].append(a)
    dead = deque(v for v, c in out_count.items() if c == 0)
    alive = set(alive)
    while dead:
        b = dead.popleft()
        if b not in alive:
            continue
        alive.discard(b)
        for a in incoming[b]:
            if a in alive:
                out_count[a] -= 1
                if out_count[a] == 0:
                    dead.append(a)
    return alive


def build_neighbor_graph(
    spec: IfsSpec, cap: int = DEFAULT_CANDIDATE_CAP
) -> NeighborGraph:
    """Construct the boundary automaton of ``spec``.

    Raises ``NotFiniteTypeError`` when more than ``cap`` candidates appear
    and ``OverlapError`` when two of the defining maps are equal.  An
    identity arising deeper in the expansion is an exact overlap of two
    same-level pieces; it is recorded on the graph as a witness and the
    construction continues, because such systems still admit a sensible
    automaton over their proper neighbor maps.
    """
    radius = attractor_radius(spec)
    bound = 4 * radius * radius
    m = spec.m
    maps = [spec.map_at(i) for i in range(1, m + 1)]
    invs = [f.invert() for f in maps]

    cand_index: dict[PlanarMap, int] = {}
    cand_list: list[PlanarMap] = []
    queue: deque[int] = deque()

    def intern(h: PlanarMap) -> int:
        idx = cand_index.get(h)
        if idx is None:
            idx = len(cand_list) + 1
            if idx > cap:
                raise NotFiniteTypeError(cap, idx)
            cand_index[h] = idx
            cand_list.append(h)
            queue.append(idx)
        return idx

    seed_edges: list[tuple[int, int, int]] = []
    for i in range(1, m + 1):
        for j in range(1, m + 1):
            if i == j:
                continue
            h = invs[i - 1].compose(maps[j - 1])
            if h.is_identity():
                raise OverlapError(f"f_{i} = f_{j}")
            if h.t.norm_sq() <= bound:
                seed_edges.append((intern(h), i, j))

    cand_edges: list[tuple[int, int, int, int]] = []
    witnesses: list[tuple[PlanarMap, int, int]] = []
    while queue:
        a = queue.popleft()
        h = cand_list[a - 1]
        for i in range(1, m + 1):
            left = invs[i - 1].compose(h)
            for j in range(1, m + 1):
                h2 = left.compose(maps[j - 1])
                if h2.is_identity():
                    witnesses.append((h, i, j))
                    continue
                if h2.t.norm_sq() <= bound:
                    cand_edges.append((a, intern(h2), i, j))

    alive = _trim_to_cycles(set(range(1, len(cand_list) + 1)), cand_edges)

    # Reachability from the identity through surviving seeds.  Survivors are
    # reachable by construction (each was discovered along a surviving chain),
    # but the check is cheap and guards the invariant directly.
    reach: set[int] = set()
    frontier = deque(s for s, _, _ in seed_edges if s in alive)
    reach.update(frontier)
    adj: dict[int, list[int]] = {}
    for a, b, _, _ in cand_edges:
        if a in alive and b in alive:
            adj.setdefault(a, []).append(b)
    while frontier:
        a = frontier.popleft()
        for b in adj.get(a, ()):
            if b not in reach:
                reach.add(b)
                frontier.append(b)
    alive &= reach

    order = [k for k in range(1, len(cand_list) + 1) if k in alive]
    renum = {k: pos + 1 for pos, k in enumerate(order)}
    vertices = [PlanarMap.identity()] + [cand_list[k - 1] for k in order]

    edges: list[tuple[int, int, int, int]] = [(0, 0, i, i) for i in range(1, m + 1)]
    for s, i, j in seed_edges:
        if s in alive:
            edges.append((0, renum[s], i, j))
    for a, b, i, j in cand_edges:
        if a in alive and b in alive:
            edges.append((renum[a], renum[b], i, j))

    return NeighborGraph(
        spec, radius, vertices, edges, n_id_loops=m,
        overlap_witnesses=tuple(witnesses),
    )

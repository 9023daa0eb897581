"""End-to-end pipeline from an IFS to neighborhood statistics."""

from __future__ import annotations

from dataclasses import dataclass

from .exact import IfsSpec
from .interior import Word
from .nbhgraph import (
    DEFAULT_WORKLIST_CAP,
    NeighborhoodGraph,
    build_neighborhood_graph,
)
from .neighbor import (
    DEFAULT_CANDIDATE_CAP,
    NeighborGraph,
    build_neighbor_graph,
)

# The printed tables ignore neighbors meeting in a single point, so the
# continuum view is the default end to end; pass filter_kind="all" to keep
# point neighbors in play.
DEFAULT_FILTER = "continuum"


@dataclass
class Analysis:
    """A fully analyzed system: boundary automaton, chosen view, and
    neighborhood graph."""

    spec: IfsSpec
    graph: NeighborGraph
    view: NeighborGraph
    ng: NeighborhoodGraph

    @property
    def filter_kind(self) -> str:
        return self.view.filter_kind


def analyze(
    spec: IfsSpec,
    filter_kind: str = DEFAULT_FILTER,
    seed_word: Word | None = None,
    candidate_cap: int = DEFAULT_CANDIDATE_CAP,
    worklist_cap: int = DEFAULT_WORKLIST_CAP,
) -> Analysis:
    graph = build_neighbor_graph(spec, cap=candidate_cap)
    view = graph.view(filter_kind)
    ng = build_neighborhood_graph(view, seed_word=seed_word, worklist_cap=worklist_cap)
    return Analysis(spec=spec, graph=graph, view=view, ng=ng)

"""Self-similar set analysis: neighbor graphs, neighborhoods, and zooming.

The package takes a finite-type iterated function system in the plane,
builds the automaton of neighbor maps that describes how the boundary of
the attractor is assembled, classifies the neighbors, derives boundary
dimensions, and enumerates the neighborhood types that drive an
arbitrarily deep zoom into the set.
"""

from __future__ import annotations

from .analysis import Analysis, DEFAULT_FILTER, analyze
from .errors import (
    FrontierExceededError,
    IfsParseError,
    NoInteriorWordError,
    NonConvergenceError,
    NoPredecessorError,
    NotFiniteTypeError,
    OverlapError,
    SeedNotInteriorError,
    SelfsimError,
    WorklistExceededError,
)
from .exact import (
    GaussRational,
    IfsSpec,
    PlanarMap,
    attractor_radius,
    canonical_ifs_text,
    compose_word,
    ifs_json,
    map_label,
    parse_ifs,
)
from .interior import (
    find_interior_word,
    format_word,
    is_interior_word,
    neighborhood_of_word,
    parse_word,
)
from .nbhgraph import (
    NeighborhoodGraph,
    StationaryDistribution,
    StatsReport,
    build_neighborhood_graph,
)
from .neighbor import NeighborGraph, VertexClass, build_neighbor_graph
from .presets import list_presets, load_preset
from .render import (
    Raster,
    Window,
    default_window,
    render_attractor,
    render_neighborhood,
    render_zoom_frame,
    svg_pieces,
)
from .rng import SplitMix64, splitmix64_next
from .zoom import (
    ZoomState,
    apply_script,
    empirical_frequencies,
    initial_state,
    random_walk,
    trajectory_log,
)

__version__ = "0.1.0"

__all__ = [
    "Analysis",
    "DEFAULT_FILTER",
    "FrontierExceededError",
    "GaussRational",
    "IfsParseError",
    "IfsSpec",
    "NeighborGraph",
    "NeighborhoodGraph",
    "NoInteriorWordError",
    "NonConvergenceError",
    "NoPredecessorError",
    "NotFiniteTypeError",
    "OverlapError",
    "PlanarMap",
    "Raster",
    "SeedNotInteriorError",
    "SelfsimError",
    "SplitMix64",
    "StationaryDistribution",
    "StatsReport",
    "VertexClass",
    "Window",
    "WorklistExceededError",
    "ZoomState",
    "analyze",
    "apply_script",
    "attractor_radius",
    "build_neighbor_graph",
    "build_neighborhood_graph",
    "canonical_ifs_text",
    "compose_word",
    "default_window",
    "empirical_frequencies",
    "find_interior_word",
    "format_word",
    "ifs_json",
    "initial_state",
    "is_interior_word",
    "list_presets",
    "load_preset",
    "map_label",
    "neighborhood_of_word",
    "parse_ifs",
    "parse_word",
    "random_walk",
    "render_attractor",
    "render_neighborhood",
    "render_zoom_frame",
    "splitmix64_next",
    "svg_pieces",
    "trajectory_log",
]

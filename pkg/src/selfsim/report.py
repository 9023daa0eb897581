"""JSON and CSV exports of graphs, neighborhoods, and statistics.

The formats are stable; JSON Schemas live in ``selfsim/schemas`` and the
test suite validates every export against them.
"""

from __future__ import annotations

import csv
import io
from fractions import Fraction

from .exact import map_json, map_label, _rational_json
from .interior import format_word
from .nbhgraph import NeighborhoodGraph
from .neighbor import NeighborGraph


def _rat(q: Fraction):
    return _rational_json(q)


def graph_json(g: NeighborGraph) -> dict:
    vertices = []
    for k, f in enumerate(g.vertices):
        entry: dict = {"index": k, "map": map_json(f), "label": map_label(f)}
        if k == 0:
            entry["identity"] = True
        else:
            cls = g.vertex_class(k)
            entry["kind"] = cls.kind
            entry["dimension"] = cls.dimension
        vertices.append(entry)
    return {
        "name": g.spec.name,
        "m": g.m,
        "rSquared": _rat(g.spec.r_sq),
        "radius": _rat(g.radius),
        "filter": g.filter_kind,
        "connected": g.is_connected(),
        "overlapDetected": g.overlap_detected,
        "attractorDimension": g.attractor_dimension(),
        "boundaryDimension": g.boundary_dimension(),
        "counts": {
            "vertices": g.n_vertices,
            "edges": g.n_edges,
            "continuum": len(g.continuum_indices),
            "point": len(g.point_indices),
        },
        "vertices": vertices,
        "edges": [list(e) for e in g.counted_edges],
        "idLoops": [list(e) for e in g.edges[: g.n_id_loops]],
    }


def stationary_json(ng: NeighborhoodGraph) -> dict:
    st = ng.stationary
    out: dict = {"exact": st.exact}
    if st.exact:
        out["values"] = [_rat(v) for v in st.values]
        out["floats"] = [float(v) for v in st.values]
    else:
        out["values"] = list(st.values)
        out["floats"] = list(st.values)
        out["iterations"] = st.iterations
        out["residual"] = st.residual
    return out


def neighborhoods_json(ng: NeighborhoodGraph) -> dict:
    p = ng.stationary.as_floats
    return {
        "name": ng.g.spec.name,
        "m": ng.m,
        "filter": ng.g.filter_kind,
        "seedWord": format_word(ng.seed_word),
        "K": ng.K,
        "stationary": stationary_json(ng),
        "stats": ng.stats().as_dict(),
        "neighborhoods": [
            {
                "index": k,
                "members": list(ng.members(k)),
                "labels": [map_label(f) for f in ng.member_maps(k)],
                "size": ng.size(k),
                "p": float(p[k - 1]),
                "successors": [ng.successor(k, i) for i in range(1, ng.m + 1)],
            }
            for k in range(1, ng.K + 1)
        ],
        "substitution": {"triples": [list(t) for t in ng.substitution_triples()]},
    }


def neighborhoods_csv(ng: NeighborhoodGraph) -> str:
    p = ng.stationary.as_floats
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(
        ["index", "size", "p"]
        + [f"successor_{i}" for i in range(1, ng.m + 1)]
        + ["members"]
    )
    for k in range(1, ng.K + 1):
        writer.writerow(
            [k, ng.size(k), repr(float(p[k - 1]))]
            + [ng.successor(k, i) for i in range(1, ng.m + 1)]
            + [" ".join(str(v) for v in ng.members(k))]
        )
    return buf.getvalue()


def summary_json(analysis) -> dict:
    g = analysis.graph
    ng = analysis.ng
    stats = ng.stats()
    return {
        "name": g.spec.name,
        "m": g.m,
        "r": g.spec.r,
        "filter": analysis.filter_kind,
        "connected": g.is_connected(),
        "overlapDetected": g.overlap_detected,
        "attractorDimension": g.attractor_dimension(),
        "boundaryDimension": g.boundary_dimension(),
        "neighborCounts": {
            "total": g.n_vertices - 1,
            "continuum": len(g.continuum_indices),
            "point": len(g.point_indices),
        },
        "graphEdges": g.n_edges,
        "viewEdges": analysis.view.n_edges,
        "interiorWord": format_word(ng.seed_word),
        "K": ng.K,
        "stats": stats.as_dict(),
    }

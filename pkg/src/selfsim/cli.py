"""Command line front door: analyze, nbhgraph, zoom, render, search.

Exit codes: 0 success, 1 parse or usage errors, 2 not finite type at the
configured cap, 3 exact overlap.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import deque
from pathlib import Path

import numpy as np

from .analysis import DEFAULT_FILTER, analyze
from .errors import (
    IfsParseError,
    NotFiniteTypeError,
    OverlapError,
    SelfsimError,
    WorklistExceededError,
)
from .exact import IfsSpec, attractor_radius, ifs_json, map_label, parse_ifs
from .interior import format_word, parse_word
from .nbhgraph import DEFAULT_WORKLIST_CAP
from .neighbor import DEFAULT_CANDIDATE_CAP, build_neighbor_graph
from .presets import list_presets, load_preset
from .render import (
    DEFAULT_DEPTH,
    default_window,
    render_attractor,
    render_zoom_frame,
    svg_pieces,
)
from .report import graph_json, neighborhoods_csv, neighborhoods_json
from .rng import SplitMix64
from .zoom import HISTORY_CAP, ZoomState, initial_state, zoom_in, zoom_out

_ROTATIONS = {"1": 1 + 0j, "-1": -1 + 0j, "i": 1j, "-i": -1j}


def _load_spec(ref: str) -> IfsSpec:
    """A spec reference is a JSON file path or a bundled preset name."""
    path = Path(ref)
    if path.exists():
        return parse_ifs(path.read_text())
    if ref in list_presets():
        return load_preset(ref)
    raise IfsParseError(
        f"{ref!r} is neither a file nor a preset (presets: {', '.join(list_presets())})"
    )


def _write_or_print(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        print(text)


def cmd_analyze(args: argparse.Namespace) -> int:
    spec = _load_spec(args.spec)
    g = build_neighbor_graph(spec, cap=args.cap)
    view = g.view(args.filter)
    print(f"name: {spec.name}")
    print(f"maps: {g.m}, contraction r^2 = {spec.r_sq}")
    print(f"finite type: yes ({g.n_vertices - 1} neighbor maps within cap {args.cap})")
    if g.overlap_detected:
        h, i, j = g.overlap_witnesses[0]
        print(
            f"overlap: EXACT OVERLAP detected "
            f"(expanding {map_label(h)} by child pair ({i},{j}) reached the identity; "
            f"{len(g.overlap_witnesses)} witnesses)"
        )
    else:
        print("overlap: none detected")
    label = "continuum incl. id" if view.filter_kind == "continuum" else "all incl. id"
    print(f"{view.n_vertices} vertices ({label}), {view.n_edges} edges")
    n_point = len(g.point_indices)
    print(f"point neighbors: {n_point}")
    bdim = view.boundary_dimension()
    print(f"boundary dimension: {'empty' if bdim is None else f'{bdim:.6f}'}")
    print(f"attractor dimension: {g.attractor_dimension():.6f}")
    print(f"connected: {'yes' if g.is_connected() else 'no'}")
    if args.json or args.out:
        text = json.dumps(graph_json(view), indent=2)
        _write_or_print(text, args.out)
    return 0


def cmd_nbhgraph(args: argparse.Namespace) -> int:
    spec = _load_spec(args.spec)
    seed_word = None
    if args.seed_word:
        seed_word = parse_word(args.seed_word, spec.m)
    a = analyze(
        spec,
        filter_kind=args.filter,
        seed_word=seed_word,
        candidate_cap=args.cap,
        worklist_cap=args.worklist_cap,
    )
    ng = a.ng
    if args.csv:
        _write_or_print(neighborhoods_csv(ng), args.out)
        return 0
    if args.json:
        _write_or_print(json.dumps(neighborhoods_json(ng), indent=2), args.out)
        return 0
    stats = ng.stats()
    print(f"name: {spec.name}")
    print(f"filter: {a.filter_kind}")
    print(f"interior word: {format_word(ng.seed_word)}")
    print(f"K = {ng.K} neighborhoods, {ng.K * ng.m} edges")
    method = "exact rational solve" if ng.stationary.exact else "power iteration"
    print(f"stationary: {method}")
    print(f"average neighbors: {stats.avg_nbrs:.4f} (max {stats.max_nbrs})")
    buckets = ", ".join(
        f"{k} nbs {100 * f:.2f}%" for k, f in enumerate(stats.bucket_freq, start=1)
    )
    print(f"size buckets: {buckets}")
    print(
        f"heavy (> {stats.heavy_threshold} nbs): {100 * stats.heavy_freq:.2f}%"
    )
    leading = ", ".join(
        f"#{k} at {100 * p:.2f}%" for k, p in stats.leading
    )
    print(f"leading neighborhoods: {leading}")
    return 0


def _frame(a, state: ZoomState, frames_dir: Path, n: int, args) -> None:
    raster = render_zoom_frame(
        a.view,
        a.ng.member_maps(state.current),
        window=default_window(float(a.view.radius), args.pixels),
        max_depth=args.depth if args.depth is not None else DEFAULT_DEPTH,
    )
    (frames_dir / f"frame_{n:04d}.ppm").write_bytes(raster.to_ppm())


def cmd_zoom(args: argparse.Namespace) -> int:
    spec = _load_spec(args.spec)
    seed_word = parse_word(args.seed_word, spec.m) if args.seed_word else None
    a = analyze(
        spec, filter_kind=args.filter, seed_word=seed_word, candidate_cap=args.cap
    )
    ng = a.ng
    state = initial_state(ng, seed=args.seed)
    frames_dir = None
    if args.frames_dir:
        frames_dir = Path(args.frames_dir)
        frames_dir.mkdir(parents=True, exist_ok=True)
        _frame(a, state, frames_dir, 0, args)
    lines = ["step, nbhIndex, action, childLabel"]
    for n, token in enumerate(args.script, start=1):
        if token == "out":
            state = zoom_out(state)
            child = "" if state.last_child is None else str(state.last_child)
            lines.append(f"{state.step_count}, {state.current}, out, {child}")
        elif token.startswith("in:"):
            child = int(token[3:])
            state = zoom_in(state, child)
            lines.append(f"{state.step_count}, {state.current}, in:{child}, {child}")
        elif token.startswith("walk:"):
            steps = int(token[5:])
            state, deviation = _walk(state, steps)
            lines.append(
                f"# walk:{steps}: max |empirical - stationary| = {deviation:.6f}"
            )
            lines.append(f"{state.step_count}, {state.current}, walk:{steps}, ")
        else:
            raise IfsParseError(f"unknown zoom token {token!r} (use in:i, out, walk:N)")
        if frames_dir is not None:
            _frame(a, state, frames_dir, n, args)
    print("\n".join(lines))
    return 0


def _walk(state: ZoomState, steps: int) -> tuple[ZoomState, float]:
    """Uniform-child descent appended to the state; returns the new state and
    the empirical-vs-stationary max deviation over the walk."""
    ng = state.ng
    rng = SplitMix64(state.rng_state)
    counts = np.zeros(ng.K, dtype=np.int64)
    # bounded history: the cap drops the oldest entries, as for deep manual zooms
    tail: deque[tuple[int, int]] = deque(state.history, maxlen=HISTORY_CAP)
    cur = state.current
    for _ in range(steps):
        child = 1 + rng.next_below(ng.m)
        tail.append((cur, child))
        cur = ng.successor(cur, child)
        counts[cur - 1] += 1
    empirical = counts / max(steps, 1)
    deviation = float(np.max(np.abs(empirical - ng.stationary.as_floats)))
    new_state = ZoomState(
        ng=ng,
        current=cur,
        seed=state.seed,
        rng_state=rng.state,
        step_count=state.step_count + steps,
        history=tuple(tail),
        last_child=None,
    )
    return new_state, deviation


def cmd_render(args: argparse.Namespace) -> int:
    spec = _load_spec(args.spec)
    radius = float(attractor_radius(spec))
    out = Path(args.out if args.out else f"{spec.name}.ppm")
    if out.suffix == ".svg":
        depth = args.depth if args.depth is not None else 6
        out.write_text(svg_pieces(spec, radius, depth))
    else:
        depth = args.depth if args.depth is not None else DEFAULT_DEPTH
        raster = render_attractor(
            spec, radius, window=default_window(radius, args.pixels), max_depth=depth
        )
        data = raster.to_png() if out.suffix == ".png" else raster.to_ppm()
        out.write_bytes(data)
    print(f"wrote {out}")
    return 0


def cmd_search(args: argparse.Namespace) -> int:
    try:
        rotations = [_ROTATIONS[tok.strip()] for tok in args.rotations.split(",")]
    except KeyError as e:
        raise IfsParseError(f"unknown rotation token {e.args[0]!r}") from None
    if len(rotations) < 2:
        raise IfsParseError("need at least two rotations")
    rng = SplitMix64(args.seed)
    span = 2 * args.range + 1
    hits = []
    report = []
    for trial in range(args.count):
        translations = [
            complex(rng.next_below(span) - args.range, rng.next_below(span) - args.range)
            for _ in rotations
        ]
        spec = _search_spec(rotations, translations, trial)
        t_text = ", ".join(_gauss_str(t) for t in translations)
        if spec is None:
            report.append(f"trial {trial}: v = {t_text}: degenerate (duplicate maps)")
            continue
        try:
            g = build_neighbor_graph(spec, cap=args.cap)
        except OverlapError:
            report.append(f"trial {trial}: v = {t_text}: overlap detected, excluded")
            continue
        except NotFiniteTypeError:
            report.append(f"trial {trial}: v = {t_text}: not finite type at cap {args.cap}")
            continue
        if g.overlap_detected:
            report.append(f"trial {trial}: v = {t_text}: overlap detected, excluded")
            continue
        bdim = g.view("continuum").boundary_dimension()
        dim_text = "empty boundary" if bdim is None else f"dim {bdim:.4f}"
        report.append(
            f"trial {trial}: v = {t_text}: finite type, "
            f"{g.n_vertices - 1} neighbors, {dim_text}"
        )
        hits.append((spec, g))
    if args.json:
        print(
            json.dumps(
                [
                    {
                        "spec": ifs_json(spec),
                        "neighbors": g.n_vertices - 1,
                        "boundaryDimension": g.view("continuum").boundary_dimension(),
                    }
                    for spec, g in hits
                ],
                indent=2,
            )
        )
        return 0
    print("\n".join(report))
    print(f"{len(hits)} of {args.count} trials finite type (seed {args.seed})")
    return 0


def _gauss_str(t: complex) -> str:
    re, im = int(t.real), int(t.imag)
    if im == 0:
        return str(re)
    im_text = {1: "i", -1: "-i"}.get(im, f"{im}i")
    if re == 0:
        return im_text
    return f"{re}{'+' if im > 0 else ''}{im_text}"


def _search_spec(
    rotations: list[complex], translations: list[complex], trial: int
) -> IfsSpec | None:
    maps = []
    for rot, t in zip(rotations, translations):
        maps.append(
            {
                "u": {
                    "re": [int(rot.real), 2],
                    "im": [int(rot.imag), 2],
                },
                "conj": False,
                "t": {"re": int(t.real), "im": int(t.imag)},
            }
        )
    seen = {json.dumps(f, sort_keys=True) for f in maps}
    if len(seen) != len(maps):
        return None
    return parse_ifs({"name": f"search-{trial}", "maps": maps})


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="selfsim",
        description="Neighbor automata and virtual magnification for "
        "finite-type self-similar sets",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_filter=True):
        p.add_argument("spec", help="IFS JSON file or preset name")
        if with_filter:
            p.add_argument(
                "--filter", choices=["continuum", "all"], default=DEFAULT_FILTER
            )
        p.add_argument("--cap", type=int, default=DEFAULT_CANDIDATE_CAP)

    p = sub.add_parser("analyze", help="neighbor graph, dimensions, verdicts")
    add_common(p)
    p.add_argument("--json", action="store_true")
    p.add_argument("--out", help="write the graph JSON here")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("nbhgraph", help="neighborhood graph and statistics")
    add_common(p)
    p.add_argument("--seed-word", help="interior word override, e.g. 21")
    p.add_argument("--worklist-cap", type=int, default=DEFAULT_WORKLIST_CAP)
    p.add_argument("--csv", action="store_true")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out", help="write machine output here instead of stdout")
    p.set_defaults(func=cmd_nbhgraph)

    p = sub.add_parser("zoom", help="scripted magnification flow")
    add_common(p)
    p.add_argument("script", nargs="+", help="tokens: in:i, out, walk:N")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--seed-word", help="interior word for the start view, e.g. 21")
    p.add_argument("--frames-dir", help="write one PPM frame per command here")
    p.add_argument("--pixels", type=int, default=512)
    p.add_argument("--depth", type=int, default=None)
    p.set_defaults(func=cmd_zoom)

    p = sub.add_parser("render", help="rasterize the attractor")
    add_common(p, with_filter=False)
    p.add_argument("--out", help="output path; .ppm, .png or .svg")
    p.add_argument("--pixels", type=int, default=512)
    p.add_argument("--depth", type=int, default=None)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("search", help="random finite-type example search")
    p.add_argument("--rotations", default="i,-1,-i", help="comma list from 1,-1,i,-i")
    p.add_argument("--range", type=int, default=3, dest="range")
    p.add_argument("--count", type=int, default=100, help="number of random trials")
    p.add_argument("--cap", type=int, default=DEFAULT_CANDIDATE_CAP)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_search)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (IfsParseError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except (NotFiniteTypeError, WorklistExceededError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except OverlapError as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except SelfsimError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

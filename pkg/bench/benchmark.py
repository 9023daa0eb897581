"""Compare the compiled and pure kernel backends on identical inputs.

Run as ``python3 bench/benchmark.py``.  Reports wall time per kernel and
checks that outputs agree bit for bit, which is the contract between the
two backends.
"""

from __future__ import annotations

import time

import numpy as np

from selfsim._kernels import _pure as pure
from selfsim.exact import attractor_radius
from selfsim.interior import find_interior_word, neighborhood_of_word, set_to_mask
from selfsim.neighbor import build_neighbor_graph
from selfsim.presets import load_preset
from selfsim.render import default_window

try:
    from selfsim._kernels import _speed as speed
except ImportError:
    speed = None


def _closure_inputs(name: str, filter_kind: str):
    spec = load_preset(name)
    g = build_neighbor_graph(spec)
    view = g.view(filter_kind)
    base = [view.base_mask(i) for i in range(1, spec.m + 1)]
    word = find_interior_word(view)
    seed = set_to_mask(neighborhood_of_word(view, word))
    return spec, view, base, seed


def _timed(fn, *args):
    t0 = time.perf_counter()
    out = fn(*args)
    return out, time.perf_counter() - t0


def bench_closure(name: str, filter_kind: str) -> None:
    spec, view, base, seed = _closure_inputs(name, filter_kind)
    args = (spec.m, view.successor_masks, base, seed, 10**7, view.n_vertices - 1)
    (mp, sp), tp = _timed(pure.nbh_closure, *args)
    line = f"closure {name:<14} K={len(mp):<7} pure {tp * 1e3:9.1f} ms"
    if speed is not None:
        (ms, ss), ts = _timed(speed.nbh_closure, *args)
        assert mp == ms and sp == ss, "backend outputs differ"
        line += f"   speed {ts * 1e3:9.1f} ms   {tp / ts:5.1f}x"
    print(line)


def bench_walk(name: str, steps: int) -> None:
    spec, view, base, seed = _closure_inputs(name, "continuum")
    _, sp = pure.nbh_closure(
        spec.m, view.successor_masks, base, seed, 10**7, view.n_vertices - 1
    )
    table = np.array(sp, dtype=np.int64)
    args = (table, 0, steps, 0x5EED)
    wp, tp = _timed(pure.random_walk, *args)
    line = f"walk    {name:<14} n={steps:<7} pure {tp * 1e3:9.1f} ms"
    if speed is not None:
        ws, ts = _timed(speed.random_walk, *args)
        assert np.array_equal(wp, ws), "backend outputs differ"
        line += f"   speed {ts * 1e3:9.1f} ms   {tp / ts:5.1f}x"
    print(line)


def bench_raster(name: str, pixels: int, depth: int) -> None:
    spec = load_preset(name)
    radius = float(attractor_radius(spec))
    win = default_window(radius, pixels)
    maps = []
    for i in range(1, spec.m + 1):
        u, conj, t = spec.map_at(i).to_floats()
        maps.append((u.real, u.imag, t.real, t.imag, conj))
    copies = [(1.0, 0.0, 0.0, 0.0, False)]
    colors = np.array([(40, 60, 120)], dtype=np.uint8)
    args = (
        copies, colors, maps, spec.r, radius,
        win.center.real, win.center.imag, win.half_width,
        pixels, depth, (0, 0, 0),
    )
    rp, tp = _timed(pure.raster, *args)
    line = f"raster  {name:<14} {pixels}px/d{depth:<3} pure {tp * 1e3:9.1f} ms"
    if speed is not None:
        rs, ts = _timed(speed.raster, *args)
        assert np.array_equal(rp, rs), "backend outputs differ"
        line += f"   speed {ts * 1e3:9.1f} ms   {tp / ts:5.1f}x"
    print(line)


def main() -> None:
    if speed is None:
        print("compiled backend not built; timing pure only")
    bench_closure("chair", "continuum")
    bench_closure("fractal-square", "continuum")
    bench_closure("example-a", "all")
    bench_closure("example-b", "all")
    bench_walk("fractal-square", 10**6)
    bench_raster("chair", 512, 16)
    bench_raster("fractal-square", 512, 20)
    bench_raster("sierpinski", 1024, 18)


if __name__ == "__main__":
    main()

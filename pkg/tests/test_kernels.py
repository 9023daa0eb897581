"""The two kernel backends must agree bit for bit."""

import subprocess
import sys

import numpy as np
import pytest

import selfsim._kernels as kernels
from selfsim._kernels import _pure
from selfsim.analysis import analyze
from selfsim.errors import WorklistExceededError
from selfsim.interior import find_interior_word, neighborhood_mask_of_word
from selfsim.presets import load_preset
from selfsim.render import Window, default_window
from selfsim.render import render_attractor

speed = pytest.importorskip("selfsim._kernels._speed")


def closure_inputs(name, filter_kind="continuum"):
    a = analyze(load_preset(name), filter_kind=filter_kind)
    g = a.view
    seed = neighborhood_mask_of_word(g, find_interior_word(g))
    base = [g.base_mask(i) for i in range(1, g.m + 1)]
    return g.m, g.successor_masks, base, seed, g.n_vertices - 1


class TestBackendNames:
    def test_pure_name(self):
        assert _pure.BACKEND_NAME == "pure"

    def test_speed_name(self):
        assert speed.BACKEND_NAME == "speed"

    def test_selected_backend_is_compiled_here(self):
        assert kernels.BACKEND == "speed"

    def test_force_pure_env(self):
        code = (
            "import selfsim._kernels as k; print(k.BACKEND)"
        )
        out = subprocess.run(
            [sys.executable, "-c", code],
            capture_output=True,
            text=True,
            env={"PATH": "/usr/bin:/bin", "SELFSIM_FORCE_PURE": "1"},
            check=True,
        )
        assert out.stdout.strip() == "pure"


class TestClosureParity:
    @pytest.mark.parametrize(
        "name,filter_kind",
        [
            ("chair", "continuum"),
            ("fractal-square", "continuum"),
            ("example-a", "all"),
            ("example-b", "all"),
        ],
    )
    def test_identical_interning(self, name, filter_kind):
        m, succ, base, seed, n_bits = closure_inputs(name, filter_kind)
        masks_p, rows_p = _pure.nbh_closure(m, succ, base, seed, 10**6, n_bits)
        masks_s, rows_s = speed.nbh_closure(m, succ, base, seed, 10**6, n_bits)
        assert masks_p == masks_s
        assert rows_p == rows_s

    def test_cap_error_parity(self):
        m, succ, base, seed, n_bits = closure_inputs("chair")
        for backend in (_pure, speed):
            with pytest.raises(WorklistExceededError):
                backend.nbh_closure(m, succ, base, seed, 3, n_bits)


class TestWalkParity:
    @pytest.mark.parametrize("steps", [0, 1, 1000, 100_000])
    def test_identical_trajectories(self, chair, steps):
        table = chair.ng.successor_table
        a = _pure.random_walk(table, 0, steps, 42)
        b = speed.random_walk(table, 0, steps, 42)
        assert a.dtype == b.dtype == np.int64
        assert (a == b).all()

    def test_seed_sensitivity(self, fsquare):
        table = fsquare.ng.successor_table
        a = speed.random_walk(table, 0, 2000, 1)
        b = speed.random_walk(table, 0, 2000, 2)
        assert not (a == b).all()


class TestRasterParity:
    def rasters(self, spec, radius, window, max_depth):
        maps = []
        for k in range(1, spec.m + 1):
            u, conj, t = spec.map_at(k).to_floats()
            maps.append((u.real, u.imag, t.real, t.imag, conj))
        copies = [(1.0, 0.0, 0.0, 0.0, False)]
        colors = np.array([[40, 60, 120]], dtype=np.uint8)
        args = (
            copies,
            colors,
            maps,
            spec.r,
            radius,
            window.center.real,
            window.center.imag,
            window.half_width,
            window.pixels,
            max_depth,
            (0, 0, 0),
        )
        return _pure.raster(*args), speed.raster(*args)

    @pytest.mark.parametrize(
        "name,center,half,pixels,depth",
        [
            ("chair", 0j, 1.25, 128, 10),
            ("chair", 0.3 + 0.4j, 0.05, 64, 16),
            ("fractal-square", 0j, 1.25, 128, 12),
            ("sierpinski", -1.0 + 0.5j, 0.7, 96, 14),
        ],
    )
    def test_identical_images(self, name, center, half, pixels, depth):
        spec = load_preset(name)
        radius = 2.0 if name == "sierpinski" else 1.0
        win = Window(center, half, pixels)
        a, b = self.rasters(spec, radius, win, depth)
        assert a.shape == b.shape == (pixels, pixels, 3)
        assert (a == b).all()

    def test_full_pipeline_uses_selected_backend(self, chair):
        img = render_attractor(chair.spec, 1.0, window=default_window(1.0, 64))
        assert img.data.shape == (64, 64, 3)

"""Deterministic rasters of attractors, neighborhoods, and zoom frames.

Rendering is the only float domain: exact maps are converted once, then
pieces subdivide until their bounding disk drops below one pixel (or the
depth cap) and stamp their center under per-channel max blending, which
makes output independent of drawing order.  Identical inputs produce
bitwise-identical rasters on one platform.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _kernels
from .exact import IfsSpec, PlanarMap
from .neighbor import NeighborGraph

DEFAULT_MARGIN = 0.25
DEFAULT_DEPTH = 16

# max blending needs a ground strictly below every stamp color
BACKGROUND = (0, 0, 0)
ATTRACTOR_COLOR = (40, 60, 120)
REFERENCE_COLOR = (150, 150, 150)
OUTLINE_COLOR = (205, 60, 40)

DEFAULT_PALETTE = (
    "#d95f02",
    "#1b9e77",
    "#7570b3",
    "#e7298a",
    "#66a61e",
    "#e6ab02",
    "#a6761d",
    "#2b8cbe",
    "#c51b8a",
    "#636363",
    "#41ae76",
    "#ef6548",
    "#8c6bb1",
    "#74a9cf",
)


def parse_color(text: str) -> tuple[int, int, int]:
    """'#rrggbb' hex to an RGB triple."""
    text = text.strip().lstrip("#")
    if len(text) != 6:
        raise ValueError(f"not an rrggbb color: {text!r}")
    return tuple(int(text[k : k + 2], 16) for k in (0, 2, 4))


@dataclass(frozen=True)
class Window:
    """A square view: center, half side length, and resolution."""

    center: complex
    half_width: float
    pixels: int

    def __post_init__(self):
        if self.half_width <= 0:
            raise ValueError("half_width must be positive")
        if self.pixels < 16:
            raise ValueError("need at least 16 pixels")


@dataclass
class Raster:
    """An RGB image with writers for the supported formats."""

    data: np.ndarray

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def height(self) -> int:
        return self.data.shape[0]

    def to_ppm(self) -> bytes:
        header = f"P6\n{self.width} {self.height}\n255\n".encode()
        return header + self.data.tobytes()

    def to_png(self) -> bytes:
        import io

        from PIL import Image

        buf = io.BytesIO()
        Image.fromarray(self.data, "RGB").save(buf, "PNG")
        return buf.getvalue()

    def lit_fraction(self, background: tuple[int, int, int] = BACKGROUND) -> float:
        lit = np.any(self.data != np.array(background, dtype=np.uint8), axis=2)
        return float(lit.mean())


def default_window(radius: float, pixels: int = 512) -> Window:
    return Window(0j, (1.0 + DEFAULT_MARGIN) * radius, pixels)


def _map_floats(f: PlanarMap) -> tuple[float, float, float, float, bool]:
    u, conj, t = f.to_floats()
    return (u.real, u.imag, t.real, t.imag, conj)


def _render_copies(
    spec: IfsSpec,
    copies: list[PlanarMap],
    colors: Sequence[tuple[int, int, int]],
    radius: float,
    window: Window,
    max_depth: int,
    background: tuple[int, int, int],
) -> Raster:
    img = _kernels.raster(
        [_map_floats(f) for f in copies],
        np.array(colors, dtype=np.uint8),
        [_map_floats(spec.map_at(i)) for i in range(1, spec.m + 1)],
        spec.r,
        radius,
        window.center.real,
        window.center.imag,
        window.half_width,
        window.pixels,
        max_depth,
        background,
    )
    return Raster(img)


def render_attractor(
    spec: IfsSpec,
    radius: float,
    window: Window | None = None,
    max_depth: int = DEFAULT_DEPTH,
    color: tuple[int, int, int] = ATTRACTOR_COLOR,
    background: tuple[int, int, int] = BACKGROUND,
) -> Raster:
    """The attractor alone, in one color."""
    if window is None:
        window = default_window(radius)
    return _render_copies(
        spec, [PlanarMap.identity()], [color], radius, window, max_depth, background
    )


def render_neighborhood(
    g: NeighborGraph,
    member_maps: Sequence[PlanarMap],
    window: Window | None = None,
    max_depth: int = DEFAULT_DEPTH,
    palette: Sequence[str] = DEFAULT_PALETTE,
    background: tuple[int, int, int] = BACKGROUND,
) -> Raster:
    """The reference copy of the attractor in grey plus one colored copy
    h(A) per neighbor map h."""
    radius = float(g.radius)
    if window is None:
        window = default_window(radius)
    copies = [PlanarMap.identity()] + list(member_maps)
    colors = [REFERENCE_COLOR] + [
        parse_color(palette[k % len(palette)]) for k in range(len(member_maps))
    ]
    return _render_copies(g.spec, copies, colors, radius, window, max_depth, background)


def render_zoom_frame(
    g: NeighborGraph,
    member_maps: Sequence[PlanarMap],
    window: Window | None = None,
    max_depth: int = DEFAULT_DEPTH,
    palette: Sequence[str] = DEFAULT_PALETTE,
    background: tuple[int, int, int] = BACKGROUND,
) -> Raster:
    """A neighborhood view with the m child pieces of the reference copy
    outlined, ready for click-to-zoom."""
    raster = render_neighborhood(
        g, member_maps, window, max_depth, palette, background
    )
    radius = float(g.radius)
    if window is None:
        window = default_window(radius)
    rad = radius * g.spec.r
    for i in range(1, g.m + 1):
        center = g.spec.map_at(i).t.to_complex()
        _draw_box(raster.data, window, center, rad, OUTLINE_COLOR)
    return raster


def _draw_box(
    img: np.ndarray,
    window: Window,
    center: complex,
    rad: float,
    color: tuple[int, int, int],
) -> None:
    ps = 2.0 * window.half_width / window.pixels
    x_lo = window.center.real - window.half_width
    y_hi = window.center.imag + window.half_width
    c0 = int(np.floor((center.real - rad - x_lo) / ps))
    c1 = int(np.floor((center.real + rad - x_lo) / ps))
    r0 = int(np.floor((y_hi - (center.imag + rad)) / ps))
    r1 = int(np.floor((y_hi - (center.imag - rad)) / ps))
    n = window.pixels
    cc0, cc1 = max(c0, 0), min(c1, n - 1)
    rr0, rr1 = max(r0, 0), min(r1, n - 1)
    if cc0 > cc1 or rr0 > rr1:
        return
    rgb = np.array(color, dtype=np.uint8)
    if 0 <= r0 < n:
        img[r0, cc0 : cc1 + 1] = rgb
    if 0 <= r1 < n:
        img[r1, cc0 : cc1 + 1] = rgb
    if 0 <= c0 < n:
        img[rr0 : rr1 + 1, c0] = rgb
    if 0 <= c1 < n:
        img[rr0 : rr1 + 1, c1] = rgb


def svg_pieces(
    spec: IfsSpec,
    radius: float,
    depth: int,
    window: Window | None = None,
    color: str = "#28406e",
) -> str:
    """An SVG of the bounding squares of all pieces at one subdivision depth."""
    if depth < 0 or spec.m**depth > 200_000:
        raise ValueError("piece count at this depth is impractical for SVG")
    if window is None:
        window = default_window(float(radius), 512)
    pieces = [(1 + 0j, 0j, False)]
    maps = [f.to_floats() for f in spec.maps]
    for _ in range(depth):
        pieces = [
            (
                a * (u.conjugate() if cj else u),
                a * (t.conjugate() if cj else t) + b,
                cj != mc,
            )
            for a, b, cj in pieces
            for u, mc, t in maps
        ]
    rad = radius * spec.r**depth
    side = window.half_width * 2
    x0 = window.center.real - window.half_width
    y0 = window.center.imag - window.half_width
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {side:.6f} {side:.6f}" '
        f'width="{window.pixels}" height="{window.pixels}">',
        f'<g fill="none" stroke="{color}" stroke-width="{side / window.pixels:.6f}">',
    ]
    for _, b, _ in pieces:
        x = b.real - rad - x0
        # SVG y grows downward; flip about the window center.
        y = side - (b.imag + rad - y0)
        out.append(
            f'<rect x="{x:.6f}" y="{y:.6f}" width="{2 * rad:.6f}" height="{2 * rad:.6f}"/>'
        )
    out.append("</g></svg>")
    return "\n".join(out) + "\n"

"""Pure-Python kernels: the fallback backend.

The compiled backend in ``_speed.pyx`` implements exactly these three
functions with identical outputs (identical interning order, identical
float operation order).  Keep the two in lockstep.
"""

from __future__ import annotations

import math

import numpy as np

from ..errors import WorklistExceededError

BACKEND_NAME = "pure"


def nbh_closure(
    m: int,
    succ_masks: list[list[int]],
    base_masks: list[int],
    seed_mask: int,
    cap: int,
    n_bits: int,
) -> tuple[list[int], list[list[int]]]:
    """Worklist closure of the neighborhood recursion.

    ``succ_masks[i][v]`` is the successor bitmask of vertex ``v`` under
    letter ``i+1``; ``base_masks[i]`` is N_{i+1}.  Starting from
    ``seed_mask``, neighborhoods are interned in discovery order (letters
    ascending within one parent).  Returns the mask list and the K x m
    successor table with 0-based indices.
    """
    index = {seed_mask: 0}
    masks = [seed_mask]
    successor: list[list[int]] = []
    head = 0
    while head < len(masks):
        current = masks[head]
        row = []
        for i in range(m):
            per_vertex = succ_masks[i]
            out = base_masks[i]
            rest = current
            while rest:
                low = rest & -rest
                out |= per_vertex[low.bit_length()]
                rest ^= low
            k = index.get(out)
            if k is None:
                k = len(masks)
                if k >= cap:
                    raise WorklistExceededError(cap, k + 1)
                index[out] = k
                masks.append(out)
            row.append(k)
        successor.append(row)
        head += 1
    return masks, successor


def random_walk(
    successor: np.ndarray, start: int, steps: int, seed: int
) -> np.ndarray:
    """Uniform-child walk over the 0-based K x m successor table.

    Children are drawn with the SplitMix64 multiply-high reduction; the
    returned trajectory has ``steps + 1`` entries beginning at ``start``.
    """
    mask = (1 << 64) - 1
    state = seed & mask
    m = successor.shape[1]
    rows = successor.tolist()
    traj = np.empty(steps + 1, dtype=np.int64)
    traj[0] = start
    current = start
    for k in range(1, steps + 1):
        state = (state + 0x9E3779B97F4B7C15) & mask
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & mask
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & mask
        z = z ^ (z >> 31)
        child = (z * m) >> 64
        current = rows[current][child]
        traj[k] = current
    return traj


def raster(
    copies: list[tuple[float, float, float, float, bool]],
    colors: np.ndarray,
    maps: list[tuple[float, float, float, float, bool]],
    r: float,
    radius: float,
    cx: float,
    cy: float,
    half: float,
    pixels: int,
    max_depth: int,
    background: tuple[int, int, int],
) -> np.ndarray:
    """Rasterize isometric copies of the attractor into an RGB image.

    Each copy (a_re, a_im, b_re, b_im, conj) is the float form of an
    isometry applied to the attractor; subdivision recurses until a piece's
    bounding disk is smaller than a pixel (or max_depth), then stamps the
    disk center with the copy's color under per-channel max blending.
    """
    img = np.empty((pixels, pixels, 3), dtype=np.uint8)
    img[:, :] = background
    ps = 2.0 * half / pixels
    x_lo = cx - half
    y_hi = cy + half
    margin = 0.5 * ps
    x_lo_m = x_lo - margin
    x_hi_m = cx + half + margin
    y_lo_m = cy - half - margin
    y_hi_m = y_hi + margin

    m = len(maps)
    # entries: (a, b, conj, depth, scale, color_index)
    stack: list[tuple[complex, complex, bool, int, float, int]] = []
    for idx in range(len(copies) - 1, -1, -1):
        are, aim, bre, bim, cj = copies[idx]
        stack.append((complex(are, aim), complex(bre, bim), cj, 0, 1.0, idx))

    while stack:
        a, b, cj, depth, scale, color_idx = stack.pop()
        rad = radius * scale
        bx = b.real
        by = b.imag
        if bx + rad < x_lo_m or bx - rad > x_hi_m or by + rad < y_lo_m or by - rad > y_hi_m:
            continue
        if 2.0 * rad < ps or depth >= max_depth:
            col = int(math.floor((bx - x_lo) / ps))
            row = int(math.floor((y_hi - by) / ps))
            if 0 <= col < pixels and 0 <= row < pixels:
                px = img[row, col]
                c = colors[color_idx]
                if c[0] > px[0]:
                    px[0] = c[0]
                if c[1] > px[1]:
                    px[1] = c[1]
                if c[2] > px[2]:
                    px[2] = c[2]
            continue
        child_scale = scale * r
        for k in range(m - 1, -1, -1):
            ure, uim, tre, tim, mcj = maps[k]
            u = complex(ure, uim)
            t = complex(tre, tim)
            if cj:
                a2 = a * u.conjugate()
                b2 = a * t.conjugate() + b
            else:
                a2 = a * u
                b2 = a * t + b
            stack.append((a2, b2, cj != mcj, depth + 1, child_scale, color_idx))
    return img

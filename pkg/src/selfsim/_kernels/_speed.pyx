# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: drop-in twin of the pure backend with identical outputs.

Bit masks are held as little-endian uint64 words; float work mirrors the
CPython complex operation order (the build disables fused multiply-add so
both backends stamp identical pixels).
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport floor

from selfsim.errors import WorklistExceededError

cnp.import_array()

BACKEND_NAME = "speed"

ctypedef unsigned long long u64

cdef extern from *:
    """
    typedef unsigned __int128 selfsim_u128;
    #define SELFSIM_CTZ64(x) __builtin_ctzll(x)
    """
    ctypedef unsigned long long selfsim_u128
    int SELFSIM_CTZ64(u64 x)


def nbh_closure(
    int m,
    succ_masks,
    base_masks,
    object seed_mask,
    long cap,
    int n_bits,
):
    """Worklist closure of the neighborhood recursion.

    Same contract and interning order as the pure backend; masks are split
    into uint64 words so vertex counts past 64 stay cheap.
    """
    cdef int words = (n_bits + 63) >> 6 if n_bits > 0 else 1
    cdef int n_entries = len(succ_masks[0])
    cdef cnp.ndarray[cnp.uint64_t, ndim=3] succ = np.zeros(
        (m, n_entries, words), dtype=np.uint64
    )
    cdef cnp.ndarray[cnp.uint64_t, ndim=2] base = np.zeros((m, words), dtype=np.uint64)
    cdef int i, v, w
    cdef object mask_obj
    for i in range(m):
        for v in range(n_entries):
            mask_obj = succ_masks[i][v]
            for w in range(words):
                succ[i, v, w] = (mask_obj >> (64 * w)) & 0xFFFFFFFFFFFFFFFF
        mask_obj = base_masks[i]
        for w in range(words):
            base[i, w] = (mask_obj >> (64 * w)) & 0xFFFFFFFFFFFFFFFF

    cdef cnp.ndarray[cnp.uint64_t, ndim=1] cur = np.zeros(words, dtype=np.uint64)
    cdef cnp.ndarray[cnp.uint64_t, ndim=1] out = np.zeros(words, dtype=np.uint64)
    for w in range(words):
        cur[w] = (seed_mask >> (64 * w)) & 0xFFFFFFFFFFFFFFFF

    cdef dict index = {cur.tobytes(): 0}
    cdef list mask_rows = [cur.tobytes()]
    cdef list successor = []
    cdef list row
    cdef long head = 0, k
    cdef u64 word, low
    cdef int vertex
    cdef bytes key
    while head < len(mask_rows):
        cur = np.frombuffer(mask_rows[head], dtype=np.uint64).copy()
        row = []
        for i in range(m):
            for w in range(words):
                out[w] = base[i, w]
            for w in range(words):
                word = cur[w]
                while word:
                    low = word & (~word + 1)
                    vertex = (w << 6) + SELFSIM_CTZ64(low) + 1
                    if vertex >= n_entries:
                        raise IndexError(vertex)
                    for v in range(words):
                        out[v] |= succ[i, vertex, v]
                    word ^= low
            key = out.tobytes()
            hit = index.get(key)
            if hit is None:
                k = len(mask_rows)
                if k >= cap:
                    raise WorklistExceededError(cap, k + 1)
                index[key] = k
                mask_rows.append(key)
                row.append(k)
            else:
                row.append(hit)
        successor.append(row)
        head += 1

    cdef list masks = []
    cdef cnp.ndarray[cnp.uint64_t, ndim=1] arr
    for key in mask_rows:
        arr = np.frombuffer(key, dtype=np.uint64)
        value = 0
        for w in range(words - 1, -1, -1):
            value = (value << 64) | int(arr[w])
        masks.append(value)
    return masks, successor


def random_walk(object successor, long start, long steps, object seed):
    """Uniform-child walk over the 0-based K x m successor table.

    Identical SplitMix64 stream and multiply-high reduction as the pure
    backend, so trajectories agree element for element.
    """
    cdef cnp.ndarray[cnp.int64_t, ndim=2] table = np.ascontiguousarray(
        successor, dtype=np.int64
    )
    cdef u64 state = <u64> (int(seed) & 0xFFFFFFFFFFFFFFFF)
    cdef u64 z
    cdef long m = table.shape[1]
    cdef cnp.ndarray[cnp.int64_t, ndim=1] traj = np.empty(steps + 1, dtype=np.int64)
    cdef long current = start, k, child
    traj[0] = start
    for k in range(1, steps + 1):
        state = state + <u64> 0x9E3779B97F4B7C15
        z = state
        z = (z ^ (z >> 30)) * <u64> 0xBF58476D1CE4E5B9
        z = (z ^ (z >> 27)) * <u64> 0x94D049BB133111EB
        z = z ^ (z >> 31)
        child = <long> ((<selfsim_u128> z * <selfsim_u128> m) >> 64)
        current = table[current, child]
        traj[k] = current
    return traj


def raster(
    copies,
    colors,
    maps,
    double r,
    double radius,
    double cx,
    double cy,
    double half,
    int pixels,
    int max_depth,
    background,
):
    """Rasterize isometric copies of the attractor into an RGB image.

    Same subdivision order, culling, stamping, and per-channel max blend as
    the pure backend, operation for operation.
    """
    cdef cnp.ndarray[cnp.uint8_t, ndim=2] cols = np.ascontiguousarray(
        colors, dtype=np.uint8
    )
    cdef cnp.ndarray[cnp.uint8_t, ndim=3] img = np.empty(
        (pixels, pixels, 3), dtype=np.uint8
    )
    img[:, :, 0] = <unsigned char> background[0]
    img[:, :, 1] = <unsigned char> background[1]
    img[:, :, 2] = <unsigned char> background[2]
    cdef double ps = 2.0 * half / pixels
    cdef double x_lo = cx - half
    cdef double y_hi = cy + half
    cdef double margin = 0.5 * ps
    cdef double x_lo_m = x_lo - margin
    cdef double x_hi_m = cx + half + margin
    cdef double y_lo_m = cy - half - margin
    cdef double y_hi_m = y_hi + margin

    cdef int m = len(maps)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] mapv = np.empty((m, 4), dtype=np.float64)
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] mapc = np.empty(m, dtype=np.uint8)
    cdef int k
    for k in range(m):
        mapv[k, 0] = maps[k][0]
        mapv[k, 1] = maps[k][1]
        mapv[k, 2] = maps[k][2]
        mapv[k, 3] = maps[k][3]
        mapc[k] = 1 if maps[k][4] else 0

    # entries: (a_re, a_im, b_re, b_im, conj, depth, scale, color_index)
    cdef list stack = []
    cdef int idx
    for idx in range(len(copies) - 1, -1, -1):
        stack.append(
            (
                <double> copies[idx][0],
                <double> copies[idx][1],
                <double> copies[idx][2],
                <double> copies[idx][3],
                1 if copies[idx][4] else 0,
                0,
                1.0,
                idx,
            )
        )

    cdef double a_re, a_im, b_re, b_im, scale, rad, child_scale
    cdef double u_re, u_im, t_re, t_im, a2_re, a2_im, b2_re, b2_im
    cdef double fcol, frow
    cdef int cj, depth, color_idx, mcj
    cdef int col, row
    cdef unsigned char c0, c1, c2
    while stack:
        a_re, a_im, b_re, b_im, cj, depth, scale, color_idx = stack.pop()
        rad = radius * scale
        if (
            b_re + rad < x_lo_m
            or b_re - rad > x_hi_m
            or b_im + rad < y_lo_m
            or b_im - rad > y_hi_m
        ):
            continue
        if 2.0 * rad < ps or depth >= max_depth:
            # bounds-check the floored doubles before casting: a depth-capped
            # piece far outside the window may not fit in a C int
            fcol = floor((b_re - x_lo) / ps)
            frow = floor((y_hi - b_im) / ps)
            if 0.0 <= fcol and fcol < pixels and 0.0 <= frow and frow < pixels:
                col = <int> fcol
                row = <int> frow
                c0 = cols[color_idx, 0]
                c1 = cols[color_idx, 1]
                c2 = cols[color_idx, 2]
                if c0 > img[row, col, 0]:
                    img[row, col, 0] = c0
                if c1 > img[row, col, 1]:
                    img[row, col, 1] = c1
                if c2 > img[row, col, 2]:
                    img[row, col, 2] = c2
            continue
        child_scale = scale * r
        for k in range(m - 1, -1, -1):
            u_re = mapv[k, 0]
            u_im = mapv[k, 1]
            t_re = mapv[k, 2]
            t_im = mapv[k, 3]
            mcj = mapc[k]
            if cj:
                a2_re = a_re * u_re - a_im * (-u_im)
                a2_im = a_re * (-u_im) + a_im * u_re
                b2_re = a_re * t_re - a_im * (-t_im) + b_re
                b2_im = a_re * (-t_im) + a_im * t_re + b_im
            else:
                a2_re = a_re * u_re - a_im * u_im
                a2_im = a_re * u_im + a_im * u_re
                b2_re = a_re * t_re - a_im * t_im + b_re
                b2_im = a_re * t_im + a_im * t_re + b_im
            stack.append(
                (a2_re, a2_im, b2_re, b2_im, cj ^ mcj, depth + 1,
                 child_scale, color_idx)
            )
    return img

# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled geometry kernels: polygon rasterization and homography warp.

Mirrors the arithmetic of ``_kernels_np`` so the two backends agree.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport floor

cnp.import_array()

BACKEND = "cython"


def polygon_mask(pts, double x0, double y0, double dx, double dy, Py_ssize_t ny, Py_ssize_t nx):
    """Even-odd rasterization of a polygon at grid cell centers."""
    cdef cnp.ndarray[cnp.float64_t, ndim=2] p = np.ascontiguousarray(pts, dtype=np.float64)
    cdef cnp.ndarray[cnp.uint8_t, ndim=2] out = np.zeros((ny, nx), dtype=np.uint8)
    cdef Py_ssize_t n = p.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] xs = np.empty(n, dtype=np.float64)
    cdef Py_ssize_t i, j, k, e, m, cnt
    cdef double cy, cx, x1, y1, x2, y2, t

    for i in range(ny):
        cy = y0 + (i + 0.5) * dy
        m = 0
        for k in range(n):
            x1 = p[k, 0]
            y1 = p[k, 1]
            x2 = p[(k + 1) % n, 0]
            y2 = p[(k + 1) % n, 1]
            if (y1 <= cy) != (y2 <= cy):
                t = (cy - y1) / (y2 - y1)
                xs[m] = x1 + t * (x2 - x1)
                m += 1
        if m == 0:
            continue
        for j in range(nx):
            cx = x0 + (j + 0.5) * dx
            cnt = 0
            for e in range(m):
                if cx < xs[e]:
                    cnt += 1
            out[i, j] = cnt & 1
    return out


def warp_bilinear(src, mat, Py_ssize_t out_h, Py_ssize_t out_w):
    """Inverse-map homography warp with bilinear sampling, zero outside."""
    cdef cnp.ndarray[cnp.float32_t, ndim=3] s = np.ascontiguousarray(src, dtype=np.float32)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] m = np.ascontiguousarray(mat, dtype=np.float64)
    cdef Py_ssize_t h = s.shape[0], w = s.shape[1], c = s.shape[2]
    cdef cnp.ndarray[cnp.float32_t, ndim=3] out = np.zeros((out_h, out_w, c), dtype=np.float32)
    cdef Py_ssize_t i, j, ch, ix0, iy0, ix1, iy1
    cdef double ox, oy, denom, sx, sy, px, py
    cdef float fx, fy, w00, w01, w10, w11, acc
    cdef bint v00, v01, v10, v11

    for i in range(out_h):
        oy = i + 0.5
        for j in range(out_w):
            ox = j + 0.5
            denom = m[2, 0] * ox + m[2, 1] * oy + m[2, 2]
            if denom == 0.0:
                denom = 1e-12
            sx = (m[0, 0] * ox + m[0, 1] * oy + m[0, 2]) / denom
            sy = (m[1, 0] * ox + m[1, 1] * oy + m[1, 2]) / denom
            px = sx - 0.5
            py = sy - 0.5
            ix0 = <Py_ssize_t>floor(px)
            iy0 = <Py_ssize_t>floor(py)
            fx = <float>(px - ix0)
            fy = <float>(py - iy0)
            ix1 = ix0 + 1
            iy1 = iy0 + 1
            v00 = 0 <= iy0 < h and 0 <= ix0 < w
            v01 = 0 <= iy0 < h and 0 <= ix1 < w
            v10 = 0 <= iy1 < h and 0 <= ix0 < w
            v11 = 0 <= iy1 < h and 0 <= ix1 < w
            if not (v00 or v01 or v10 or v11):
                continue
            w00 = ((<float>1.0) - fy) * ((<float>1.0) - fx) if v00 else <float>0.0
            w01 = ((<float>1.0) - fy) * fx if v01 else <float>0.0
            w10 = fy * ((<float>1.0) - fx) if v10 else <float>0.0
            w11 = fy * fx if v11 else <float>0.0
            for ch in range(c):
                acc = <float>0.0
                if v00:
                    acc += s[iy0, ix0, ch] * w00
                if v01:
                    acc += s[iy0, ix1, ch] * w01
                if v10:
                    acc += s[iy1, ix0, ch] * w10
                if v11:
                    acc += s[iy1, ix1, ch] * w11
                out[i, j, ch] = acc
    return out

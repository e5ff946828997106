"""Pure-numpy geometry kernels.

Fallback used when the compiled extension is unavailable. Both backends
implement the same arithmetic so results are interchangeable.
"""

import numpy as np

BACKEND = "numpy"


def polygon_mask(pts, x0, y0, dx, dy, ny, nx):
    """Rasterize a simple polygon on a regular grid.

    The polygon is sampled at cell centers ``(x0 + (j+0.5)*dx, y0 + (i+0.5)*dy)``
    using the even-odd crossing rule.

    Args:
        pts: (N, 2) float64 array of polygon vertices, in order.
        x0, y0: grid origin (top-left corner of cell (0, 0)).
        dx, dy: cell size.
        ny, nx: grid shape.

    Returns:
        (ny, nx) uint8 array, 1 inside the polygon.
    """
    pts = np.asarray(pts, dtype=np.float64)
    cys = y0 + (np.arange(ny, dtype=np.float64) + 0.5) * dy
    cxs = x0 + (np.arange(nx, dtype=np.float64) + 0.5) * dx
    parity = np.zeros((ny, nx), dtype=bool)
    n = pts.shape[0]
    for k in range(n):
        x1, y1 = pts[k]
        x2, y2 = pts[(k + 1) % n]
        straddle = (y1 <= cys) != (y2 <= cys)
        if not straddle.any():
            continue
        t = (cys[straddle] - y1) / (y2 - y1)
        xint = x1 + t * (x2 - x1)
        parity[straddle] ^= cxs[None, :] < xint[:, None]
    return parity.astype(np.uint8)


def warp_bilinear(src, mat, out_h, out_w):
    """Warp ``src`` through the homography ``mat`` with bilinear sampling.

    ``mat`` maps output pixel coordinates (homogeneous, continuous, origin at
    the image top-left corner) to source coordinates. Samples falling outside
    the source image read as 0.

    Args:
        src: (H, W, C) float32 source image.
        mat: (3, 3) float64 output-to-source homography.
        out_h, out_w: output size.

    Returns:
        (out_h, out_w, C) float32 warped image.
    """
    src = np.asarray(src, dtype=np.float32)
    h, w, c = src.shape
    mat = np.asarray(mat, dtype=np.float64)

    oy, ox = np.meshgrid(
        np.arange(out_h, dtype=np.float64) + 0.5,
        np.arange(out_w, dtype=np.float64) + 0.5,
        indexing="ij",
    )
    denom = mat[2, 0] * ox + mat[2, 1] * oy + mat[2, 2]
    denom = np.where(denom == 0.0, 1e-12, denom)
    sx = (mat[0, 0] * ox + mat[0, 1] * oy + mat[0, 2]) / denom
    sy = (mat[1, 0] * ox + mat[1, 1] * oy + mat[1, 2]) / denom

    px = sx - 0.5
    py = sy - 0.5
    ix0 = np.floor(px).astype(np.int64)
    iy0 = np.floor(py).astype(np.int64)
    fx = (px - ix0).astype(np.float32)
    fy = (py - iy0).astype(np.float32)

    out = np.zeros((out_h, out_w, c), dtype=np.float32)
    for di in (0, 1):
        for dj in (0, 1):
            iy = iy0 + di
            ix = ix0 + dj
            valid = (iy >= 0) & (iy < h) & (ix >= 0) & (ix < w)
            wgt = (fy if di else (1.0 - fy)) * (fx if dj else (1.0 - fx))
            wgt = np.where(valid, wgt, 0.0).astype(np.float32)
            vals = src[np.clip(iy, 0, h - 1), np.clip(ix, 0, w - 1)]
            out += vals * wgt[..., None]
    return out

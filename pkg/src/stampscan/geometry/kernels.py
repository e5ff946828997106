"""Kernel backend selection: compiled extension if built, numpy otherwise."""

try:
    from stampscan.geometry._kernels import BACKEND, polygon_mask, warp_bilinear

    HAVE_COMPILED = True
except ImportError:  # extension not built
    from stampscan.geometry._kernels_np import BACKEND, polygon_mask, warp_bilinear

    HAVE_COMPILED = False

__all__ = ["BACKEND", "HAVE_COMPILED", "polygon_mask", "warp_bilinear"]

"""Backend parity: compiled kernels must agree with the numpy fallback."""

import numpy as np
import pytest

from stampscan.geometry import _kernels_np
from stampscan.geometry.kernels import BACKEND, HAVE_COMPILED

if HAVE_COMPILED:
    from stampscan.geometry import _kernels
else:  # pragma: no cover
    _kernels = None

needs_compiled = pytest.mark.skipif(not HAVE_COMPILED, reason="compiled kernels not built")


def test_selected_backend_reported():
    assert BACKEND in ("cython", "numpy")


@needs_compiled
def test_polygon_mask_bitwise_parity():
    rng = np.random.default_rng(11)
    for _ in range(40):
        pts = rng.uniform(-5, 105, size=(4, 2))
        args = (pts, -5.0, -5.0, 110 / 256, 110 / 256, 256, 256)
        assert np.array_equal(_kernels.polygon_mask(*args), _kernels_np.polygon_mask(*args))


@needs_compiled
def test_warp_parity():
    rng = np.random.default_rng(12)
    src = rng.uniform(0, 255, size=(37, 53, 3)).astype(np.float32)
    for _ in range(10):
        mat = np.eye(3) + rng.normal(0, 0.1, size=(3, 3))
        mat[2, :2] *= 0.001
        a = _kernels.warp_bilinear(src, mat, 41, 47)
        b = _kernels_np.warp_bilinear(src, mat, 41, 47)
        np.testing.assert_allclose(a, b, atol=1e-3)


@needs_compiled
def test_warp_identity_parity_exact():
    rng = np.random.default_rng(13)
    src = rng.uniform(0, 255, size=(20, 20, 1)).astype(np.float32)
    mat = np.eye(3)
    a = _kernels.warp_bilinear(src, mat, 20, 20)
    b = _kernels_np.warp_bilinear(src, mat, 20, 20)
    assert np.array_equal(a, b)
    assert np.array_equal(a[:, :, 0], src[:, :, 0])

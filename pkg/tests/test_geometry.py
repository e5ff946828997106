import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stampscan.geometry import (
    Quadrangle,
    TemplateRegion,
    crop_region,
    default_template_regions,
    quad_iou,
    rectify,
)

UNIT_SQUARE = Quadrangle(((0, 0), (1, 0), (1, 1), (0, 1)))


def rand_quad(rng, scale=100.0):
    """Random valid quadrangle: rotated rectangle with corner jitter."""
    while True:
        cx, cy = rng.uniform(20, scale), rng.uniform(20, scale)
        w, h = rng.uniform(10, 40), rng.uniform(10, 40)
        ang = rng.uniform(-np.pi, np.pi)
        base = np.array([(-w / 2, -h / 2), (w / 2, -h / 2), (w / 2, h / 2), (-w / 2, h / 2)])
        base += rng.uniform(-2, 2, size=(4, 2))
        rot = np.array([[np.cos(ang), -np.sin(ang)], [np.sin(ang), np.cos(ang)]])
        pts = base @ rot.T + (cx, cy)
        try:
            return Quadrangle.from_array(pts)
        except ValueError:
            continue


class TestQuadrangle:
    def test_validates_corner_count(self):
        with pytest.raises(ValueError, match="4 corners"):
            Quadrangle(((0, 0), (1, 0), (1, 1)))

    def test_rejects_zero_area(self):
        with pytest.raises(ValueError, match="degenerate"):
            Quadrangle(((0, 0), (1, 1), (2, 2), (3, 3)))

    def test_rejects_counter_clockwise(self):
        with pytest.raises(ValueError, match="counter-clockwise"):
            Quadrangle(((0, 0), (0, 1), (1, 1), (1, 0)))

    def test_rejects_self_intersection(self):
        with pytest.raises(ValueError, match="self-intersecting"):
            Quadrangle(((0, 0), (1, 1), (1, 0), (0, 1)))

    def test_area_and_centroid(self):
        q = Quadrangle(((0, 0), (2, 0), (2, 1), (0, 1)))
        assert q.area == pytest.approx(2.0)
        assert q.centroid == pytest.approx((1.0, 0.5))

    def test_from_unordered_canonicalizes(self):
        pts = [(1, 1), (0, 0), (1, 0), (0, 1)]
        q = Quadrangle.from_unordered(pts)
        assert q.corners == ((0, 0), (1, 0), (1, 1), (0, 1))

    def test_preserves_semantic_order(self):
        # A 180-degree rotated stamp keeps its own corner order.
        q = Quadrangle(((5, 5), (1, 5), (1, 1), (5, 1)))
        assert q.corners[0] == (5, 5)


class TestQuadIoU:
    def test_identical_squares(self):
        assert quad_iou(UNIT_SQUARE, UNIT_SQUARE) == 1.0

    def test_disjoint_squares(self):
        far = Quadrangle(((10, 10), (11, 10), (11, 11), (10, 11)))
        assert quad_iou(UNIT_SQUARE, far) == 0.0

    def test_half_shifted_square(self):
        # overlap 0.5, union 1.5 -> 1/3
        shifted = Quadrangle(((0.5, 0), (1.5, 0), (1.5, 1), (0.5, 1)))
        assert quad_iou(UNIT_SQUARE, shifted) == pytest.approx(1 / 3, abs=0.01)

    def test_quarter_overlap(self):
        # overlap 0.25, union 1.75 -> 1/7
        shifted = Quadrangle(((0.5, 0.5), (1.5, 0.5), (1.5, 1.5), (0.5, 1.5)))
        assert quad_iou(UNIT_SQUARE, shifted) == pytest.approx(1 / 7, abs=0.01)

    def test_symmetry_and_self_identity(self):
        rng = np.random.default_rng(7)
        for _ in range(25):
            a, b = rand_quad(rng), rand_quad(rng)
            assert quad_iou(a, b) == quad_iou(b, a)
            assert quad_iou(a, a) == 1.0

    def test_degenerate_rejected_at_construction(self):
        with pytest.raises(ValueError, match="degenerate"):
            Quadrangle(((0, 0), (1, 0), (2, 0), (3, 0)))


class TestRectify:
    def test_identity_crop_is_pixel_exact(self):
        rng = np.random.default_rng(0)
        img = rng.integers(0, 256, size=(40, 60, 3), dtype=np.uint8)
        q = Quadrangle(((10, 5), (30, 5), (30, 25), (10, 25)))
        crop = rectify(img, q, 20, 20)
        assert np.array_equal(crop, img[5:25, 10:30])

    def test_rotated_corner_order_rotates_crop(self):
        rng = np.random.default_rng(1)
        img = rng.integers(0, 256, size=(40, 60, 3), dtype=np.uint8)
        q = Quadrangle(((10, 5), (30, 5), (30, 25), (10, 25)))
        q_rot = Quadrangle(((30, 5), (30, 25), (10, 25), (10, 5)))
        crop = rectify(img, q, 20, 20)
        crop_rot = rectify(img, q_rot, 20, 20)
        assert np.array_equal(crop_rot, np.rot90(crop, k=1))

    def test_out_of_image_samples_are_black(self):
        img = np.full((20, 20, 3), 255, dtype=np.uint8)
        q = Quadrangle(((-10, 0), (10, 0), (10, 10), (-10, 10)))
        crop = rectify(img, q, 20, 10)
        assert (crop[:, :8] == 0).all()
        assert (crop[:, 12:] == 255).all()

    def test_fully_outside_raises(self):
        img = np.zeros((20, 20, 3), dtype=np.uint8)
        q = Quadrangle(((100, 100), (110, 100), (110, 110), (100, 110)))
        with pytest.raises(ValueError, match="outside"):
            rectify(img, q, 10, 10)

    def test_grayscale_roundtrip_shape(self):
        img = np.zeros((30, 30), dtype=np.uint8)
        q = Quadrangle(((5, 5), (25, 5), (25, 25), (5, 25)))
        out = rectify(img, q, 16, 12)
        assert out.shape == (12, 16)
        assert out.dtype == np.uint8

    def test_rotation_roundtrip_small_error(self):
        # Paste a stamp-like patch (smooth regions plus edges) rotated by
        # 30 deg, rectify with the ground truth quad, compare to the original.
        yy, xx = np.mgrid[0:80, 0:100]
        patch = np.stack(
            [
                127 + 80 * np.sin(xx / 9.0),
                127 + 80 * np.cos(yy / 7.0),
                np.where((xx // 20 + yy // 16) % 2 == 0, 200.0, 60.0),
            ],
            axis=-1,
        ).astype(np.float32)
        canvas = np.zeros((300, 300, 3), dtype=np.float32)
        ang = np.deg2rad(30)
        rot = np.array([[np.cos(ang), -np.sin(ang)], [np.sin(ang), np.cos(ang)]])
        corners = np.array([(0, 0), (100, 0), (100, 80), (0, 80)], dtype=np.float64)
        moved = (corners - (50, 40)) @ rot.T + (150, 150)
        from stampscan.geometry import homography_to_quad, warp_bilinear

        quad = Quadrangle.from_array(moved)
        mat = homography_to_quad(quad, 100, 80)
        inv = np.linalg.inv(mat)
        canvas = warp_bilinear(patch.astype(np.float32), inv, 300, 300)
        back = rectify(canvas, quad, 100, 80)
        err = np.abs(back[5:-5, 5:-5] - patch[5:-5, 5:-5].astype(np.float32)).mean() / 255.0
        assert err < 10 / 255


class TestTemplateRegions:
    def test_bounds_validated(self):
        with pytest.raises(ValueError, match="malformed"):
            TemplateRegion("date", 0.5, 0.1, 0.4, 0.2)
        with pytest.raises(ValueError, match="unknown region"):
            TemplateRegion("logo", 0, 0, 1, 1)

    def test_defaults_are_pairwise_disjoint(self):
        regions = list(default_template_regions().values())
        for i, a in enumerate(regions):
            for b in regions[i + 1 :]:
                no_overlap = (
                    a.x1 <= b.x0 or b.x1 <= a.x0 or a.y1 <= b.y0 or b.y1 <= a.y0
                )
                assert no_overlap, f"{a.name} overlaps {b.name}"

    def test_full_frame_crop_is_whole_image_resized(self):
        img = np.zeros((100, 200, 3), dtype=np.uint8)
        img[:, 100:] = 255
        region = TemplateRegion("country", 0.0, 0.0, 1.0, 1.0)
        out = crop_region(img, region, out_size=(64, 64))
        assert out.shape == (64, 64, 3)
        assert (out[:, :30] == 0).all() and (out[:, 34:] == 255).all()

    def test_central_region_pixels(self):
        img = np.zeros((100, 100), dtype=np.uint8)
        img[25:75, 25:75] = 200
        region = TemplateRegion("country", 0.25, 0.25, 0.75, 0.75)
        out = crop_region(img, region, out_size=(50, 50))
        assert out.shape == (50, 50)
        assert (out == 200).all()

    def test_output_size_matches_configured_model_input(self):
        img = np.zeros((120, 240, 3), dtype=np.uint8)
        for name, (w, h) in (("date", (512, 128)), ("country", (64, 64)), ("direction", (32, 32))):
            region = default_template_regions()[name]
            out = crop_region(img, region)
            assert out.shape == (h, w, 3)


@settings(max_examples=30, deadline=None)
@given(
    cx=st.floats(10, 90),
    cy=st.floats(10, 90),
    w=st.floats(5, 30),
    h=st.floats(5, 30),
    ang=st.floats(-np.pi, np.pi),
)
def test_iou_self_is_one_property(cx, cy, w, h, ang):
    base = np.array([(-w / 2, -h / 2), (w / 2, -h / 2), (w / 2, h / 2), (-w / 2, h / 2)])
    rot = np.array([[np.cos(ang), -np.sin(ang)], [np.sin(ang), np.cos(ang)]])
    q = Quadrangle.from_array(base @ rot.T + (cx, cy))
    assert quad_iou(q, q) == 1.0

"""Quadrangles, polygon IoU, perspective rectification and template crops."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from PIL import Image

from stampscan.geometry.kernels import polygon_mask, warp_bilinear

_AREA_EPS = 1e-9

# Default model input sizes (width, height) for template crops.
REGION_SIZES = {"date": (512, 128), "country": (64, 64), "direction": (32, 32)}

# Default Schengen layout in normalized rectified-stamp coordinates.
# Calibrated against the synthetic stamp layout; deployments override via config.
DEFAULT_TEMPLATE = {
    "country": (0.06, 0.08, 0.34, 0.38),
    "direction": (0.68, 0.06, 0.96, 0.46),
    "date": (0.15, 0.46, 0.85, 0.74),
}


def _signed_area2(pts: np.ndarray) -> float:
    """Twice the shoelace area; positive for clockwise order in image coords."""
    x, y = pts[:, 0], pts[:, 1]
    return float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def _segments_cross(p1, p2, p3, p4) -> bool:
    """True if open segments p1-p2 and p3-p4 properly intersect."""

    def orient(a, b, c):
        return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])

    d1 = orient(p3, p4, p1)
    d2 = orient(p3, p4, p2)
    d3 = orient(p1, p2, p3)
    d4 = orient(p1, p2, p4)
    return ((d1 > 0) != (d2 > 0)) and ((d3 > 0) != (d4 > 0))


@dataclass(frozen=True)
class Quadrangle:
    """Four ordered corners locating a stamp at arbitrary rotation.

    Corner order is top-left, top-right, bottom-right, bottom-left *in the
    stamp's own upright frame*; traversal is clockwise in image coordinates
    (y grows downward). The order is semantic: it carries the stamp's
    orientation, so it is preserved as given and only validated here.
    """

    corners: tuple[tuple[float, float], ...]

    def __post_init__(self):
        if len(self.corners) != 4:
            raise ValueError(f"expected 4 corners, got {len(self.corners)}")
        pts = self.array
        if not np.isfinite(pts).all():
            raise ValueError("non-finite corner coordinates")
        # Only the two non-adjacent edge pairs can cross in a 4-gon.
        if _segments_cross(pts[0], pts[1], pts[2], pts[3]) or _segments_cross(
            pts[1], pts[2], pts[3], pts[0]
        ):
            raise ValueError("self-intersecting quadrangle")
        area2 = _signed_area2(pts)
        if abs(area2) < _AREA_EPS:
            raise ValueError("degenerate quadrangle")
        if area2 < 0:
            raise ValueError("corners are counter-clockwise in image coordinates")

    @property
    def array(self) -> np.ndarray:
        return np.array(self.corners, dtype=np.float64)

    @property
    def area(self) -> float:
        return 0.5 * _signed_area2(self.array)

    @property
    def centroid(self) -> tuple[float, float]:
        pts = self.array
        return float(pts[:, 0].mean()), float(pts[:, 1].mean())

    def bbox(self) -> tuple[float, float, float, float]:
        pts = self.array
        return (
            float(pts[:, 0].min()),
            float(pts[:, 1].min()),
            float(pts[:, 0].max()),
            float(pts[:, 1].max()),
        )

    def scaled(self, sx: float, sy: float) -> "Quadrangle":
        return Quadrangle(tuple((x * sx, y * sy) for x, y in self.corners))

    @classmethod
    def from_array(cls, pts) -> "Quadrangle":
        pts = np.asarray(pts, dtype=np.float64)
        return cls(tuple((float(x), float(y)) for x, y in pts))

    @classmethod
    def from_unordered(cls, pts) -> "Quadrangle":
        """Canonicalize unordered corners: clockwise by angle around the
        centroid, starting at the corner nearest the image top-left."""
        pts = np.asarray(pts, dtype=np.float64)
        center = pts.mean(axis=0)
        ang = np.arctan2(pts[:, 1] - center[1], pts[:, 0] - center[0])
        ordered = pts[np.argsort(ang)]
        start = int(np.argmin(ordered.sum(axis=1)))
        ordered = np.roll(ordered, -start, axis=0)
        return cls.from_array(ordered)

    def to_json(self) -> list[list[float]]:
        return [[float(x), float(y)] for x, y in self.corners]


@dataclass(frozen=True)
class TemplateRegion:
    """Named normalized rectangle of the rectified Schengen stamp."""

    name: str
    x0: float
    y0: float
    x1: float
    y1: float

    def __post_init__(self):
        if self.name not in ("date", "country", "direction"):
            raise ValueError(f"unknown region name {self.name!r}")
        if not (0 <= self.x0 < self.x1 <= 1 and 0 <= self.y0 < self.y1 <= 1):
            raise ValueError(f"malformed bounds for region {self.name!r}")

    @property
    def bounds(self) -> tuple[float, float, float, float]:
        return (self.x0, self.y0, self.x1, self.y1)


def default_template_regions() -> dict[str, TemplateRegion]:
    return {name: TemplateRegion(name, *b) for name, b in DEFAULT_TEMPLATE.items()}


def quad_iou(a: Quadrangle, b: Quadrangle, resolution: int = 512) -> float:
    """Intersection-over-union of two quadrangles.

    Rasterizes both polygons on a ``resolution``×``resolution`` grid covering
    their joint bounding box; at 512 the discretization error stays below 0.01.
    """
    ax0, ay0, ax1, ay1 = a.bbox()
    bx0, by0, bx1, by1 = b.bbox()
    x0, y0 = min(ax0, bx0), min(ay0, by0)
    x1, y1 = max(ax1, bx1), max(ay1, by1)
    dx = (x1 - x0) / resolution
    dy = (y1 - y0) / resolution
    if dx <= 0 or dy <= 0:
        raise ValueError("degenerate quadrangle")
    ma = polygon_mask(a.array, x0, y0, dx, dy, resolution, resolution)
    mb = polygon_mask(b.array, x0, y0, dx, dy, resolution, resolution)
    inter = int(np.sum((ma & mb) != 0))
    union = int(np.sum((ma | mb) != 0))
    if union == 0:
        raise ValueError("degenerate quadrangle")
    return inter / union


def homography_to_quad(quad: Quadrangle, out_w: int, out_h: int) -> np.ndarray:
    """Homography mapping output-rectangle coordinates to image coordinates.

    Output corners (0,0), (out_w,0), (out_w,out_h), (0,out_h) map to the
    quad's corners in order.
    """
    src = np.array(
        [(0.0, 0.0), (float(out_w), 0.0), (float(out_w), float(out_h)), (0.0, float(out_h))]
    )
    dst = quad.array
    A = np.zeros((8, 8), dtype=np.float64)
    rhs = np.zeros(8, dtype=np.float64)
    for i in range(4):
        xo, yo = src[i]
        xi, yi = dst[i]
        A[2 * i] = [xo, yo, 1, 0, 0, 0, -xo * xi, -yo * xi]
        A[2 * i + 1] = [0, 0, 0, xo, yo, 1, -xo * yi, -yo * yi]
        rhs[2 * i] = xi
        rhs[2 * i + 1] = yi
    try:
        sol = np.linalg.solve(A, rhs)
    except np.linalg.LinAlgError as exc:
        raise ValueError("degenerate quadrangle") from exc
    return np.array(
        [
            [sol[0], sol[1], sol[2]],
            [sol[3], sol[4], sol[5]],
            [sol[6], sol[7], 1.0],
        ]
    )


def rectify(image: np.ndarray, quad: Quadrangle, out_w: int, out_h: int) -> np.ndarray:
    """Perspective-warp the stamp under ``quad`` to an upright out_w×out_h crop.

    Bilinear sampling; samples outside the image are black. Returns the same
    dtype as the input.
    """
    if out_w <= 0 or out_h <= 0:
        raise ValueError("output size must be positive")
    img = np.asarray(image)
    squeeze = img.ndim == 2
    if squeeze:
        img = img[:, :, None]
    h, w = img.shape[:2]
    x0, y0, x1, y1 = quad.bbox()
    if x1 <= 0 or y1 <= 0 or x0 >= w or y0 >= h:
        raise ValueError("quadrangle lies outside the image")
    mat = homography_to_quad(quad, out_w, out_h)
    warped = warp_bilinear(img.astype(np.float32, copy=False), mat, out_h, out_w)
    if np.issubdtype(np.asarray(image).dtype, np.integer):
        warped = np.clip(np.rint(warped), 0, 255).astype(np.asarray(image).dtype)
    return warped[:, :, 0] if squeeze else warped


def crop_region(
    rectified_stamp: np.ndarray,
    region: TemplateRegion,
    out_size: tuple[int, int] | None = None,
) -> np.ndarray:
    """Crop a template region from a rectified stamp and resize it to the
    consuming model's input size (width, height)."""
    img = np.asarray(rectified_stamp)
    if img.size == 0:
        raise ValueError("empty rectified stamp")
    h, w = img.shape[:2]
    if out_size is None:
        out_size = REGION_SIZES[region.name]
    px0 = int(round(region.x0 * w))
    px1 = max(px0 + 1, int(round(region.x1 * w)))
    py0 = int(round(region.y0 * h))
    py1 = max(py0 + 1, int(round(region.y1 * h)))
    sub = img[py0:py1, px0:px1]
    was_float = np.issubdtype(sub.dtype, np.floating)
    arr = np.clip(sub, 0, 255).astype(np.uint8) if was_float else sub
    resized = np.asarray(Image.fromarray(arr).resize(out_size, Image.BILINEAR))
    return resized.astype(np.float32) if was_float else resized

from stampscan.geometry.kernels import BACKEND, HAVE_COMPILED, polygon_mask, warp_bilinear
from stampscan.geometry.quad import (
    DEFAULT_TEMPLATE,
    REGION_SIZES,
    Quadrangle,
    TemplateRegion,
    crop_region,
    default_template_regions,
    homography_to_quad,
    quad_iou,
    rectify,
)

__all__ = [
    "BACKEND",
    "HAVE_COMPILED",
    "DEFAULT_TEMPLATE",
    "REGION_SIZES",
    "Quadrangle",
    "TemplateRegion",
    "crop_region",
    "default_template_regions",
    "homography_to_quad",
    "polygon_mask",
    "quad_iou",
    "rectify",
    "warp_bilinear",
]

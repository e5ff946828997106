"""Photometric augmentation: parameter spec, sampling and application.

Sampling and application are split so that distribution tests can draw
parameters cheaply and so every applied augmentation is recorded in the
sample metadata for reproducibility.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np
from scipy import ndimage

Range = tuple[float, float]


def _check_range(name: str, r) -> None:
    if len(r) != 2 or not (r[0] <= r[1]):
        raise ValueError(f"range {name} must be (low, high) with low <= high, got {r}")


def _check_prob(name: str, p: float) -> None:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability {name} must be in [0,1], got {p}")


@dataclass
class AugmentationSpec:
    """Distribution parameters for every photometric augmentation family.

    Intensity/hue/saturation/multiply ranges follow the training recipe;
    blur, noise and dropout magnitudes default to values that keep nearly
    all samples human-legible.
    """

    blur_prob: float = 0.6
    blur_sigma: Range = (0.0, 1.4)       # gaussian
    blur_kernel: tuple[int, int] = (2, 5)  # average/median window
    noise_prob: float = 0.6
    noise_std: Range = (0.0, 7.0)
    pixel_dropout_prob: float = 0.4
    pixel_dropout_frac: Range = (0.0, 0.04)
    coarse_dropout_prob: float = 0.4
    # Patch edge as a fraction of image width; printed source reads reversed.
    coarse_dropout_frac: Range = (0.0015, 0.03)
    coarse_dropout_count: tuple[int, int] = (1, 6)
    intensity_add: Range = (-10.0, 10.0)
    hue_add: Range = (-20.0, 20.0)
    sat_add: Range = (-20.0, 20.0)
    intensity_mul: Range = (0.5, 1.5)

    def __post_init__(self):
        for name in ("blur_sigma", "noise_std", "pixel_dropout_frac",
                     "coarse_dropout_frac", "intensity_add", "hue_add",
                     "sat_add", "intensity_mul"):
            _check_range(name, getattr(self, name))
        for name in ("blur_prob", "noise_prob", "pixel_dropout_prob", "coarse_dropout_prob"):
            _check_prob(name, getattr(self, name))

    @classmethod
    def mild(cls) -> "AugmentationSpec":
        """Gentler spec for desk-scale runs."""
        return cls(
            blur_prob=0.3,
            blur_sigma=(0.0, 0.8),
            noise_prob=0.4,
            noise_std=(0.0, 4.0),
            pixel_dropout_prob=0.2,
            pixel_dropout_frac=(0.0, 0.02),
            coarse_dropout_prob=0.2,
            intensity_mul=(0.75, 1.25),
        )

    @classmethod
    def none(cls) -> "AugmentationSpec":
        return cls(
            blur_prob=0.0, noise_prob=0.0, pixel_dropout_prob=0.0,
            coarse_dropout_prob=0.0, intensity_add=(0.0, 0.0),
            hue_add=(0.0, 0.0), sat_add=(0.0, 0.0), intensity_mul=(1.0, 1.0),
        )

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "AugmentationSpec":
        fixed = {k: tuple(v) if isinstance(v, list) else v for k, v in d.items()}
        return cls(**fixed)


def rgb_to_hsv255(img: np.ndarray) -> np.ndarray:
    """RGB [0,255] -> HSV with all channels on a 0..255 scale."""
    arr = img.astype(np.float32) / 255.0
    r, g, b = arr[..., 0], arr[..., 1], arr[..., 2]
    maxc = arr.max(axis=-1)
    minc = arr.min(axis=-1)
    v = maxc
    delta = maxc - minc
    s = np.where(maxc > 0, delta / np.maximum(maxc, 1e-12), 0.0)
    dz = np.maximum(delta, 1e-12)
    h = np.zeros_like(maxc)
    h = np.where(maxc == r, ((g - b) / dz) % 6.0, h)
    h = np.where(maxc == g, (b - r) / dz + 2.0, h)
    h = np.where(maxc == b, (r - g) / dz + 4.0, h)
    h = np.where(delta == 0, 0.0, h) / 6.0
    return np.stack([h * 255.0, s * 255.0, v * 255.0], axis=-1)


def hsv255_to_rgb(hsv: np.ndarray) -> np.ndarray:
    h = (hsv[..., 0] % 255.0) / 255.0 * 6.0
    s = np.clip(hsv[..., 1], 0, 255) / 255.0
    v = np.clip(hsv[..., 2], 0, 255) / 255.0
    i = np.floor(h).astype(np.int32) % 6
    f = h - np.floor(h)
    p = v * (1 - s)
    q = v * (1 - s * f)
    t = v * (1 - s * (1 - f))
    choices = np.stack([
        np.stack([v, t, p], -1), np.stack([q, v, p], -1), np.stack([p, v, t], -1),
        np.stack([p, q, v], -1), np.stack([t, p, v], -1), np.stack([v, p, q], -1),
    ], 0)
    out = np.take_along_axis(choices, i[None, ..., None], axis=0)[0]
    return out * 255.0


def sample_photometric_params(rng: np.random.Generator, spec: AugmentationSpec) -> dict:
    """Draw one parameter set; every value is recorded for reproducibility."""
    p: dict = {}
    p["blur_on"] = bool(rng.random() < spec.blur_prob)
    p["blur_kind"] = str(rng.choice(["gaussian", "average", "median"]))
    p["blur_sigma"] = float(rng.uniform(*spec.blur_sigma))
    p["blur_kernel"] = int(rng.integers(spec.blur_kernel[0], spec.blur_kernel[1] + 1))
    p["noise_on"] = bool(rng.random() < spec.noise_prob)
    p["noise_std"] = float(rng.uniform(*spec.noise_std))
    p["pixel_dropout_on"] = bool(rng.random() < spec.pixel_dropout_prob)
    p["pixel_dropout_frac"] = float(rng.uniform(*spec.pixel_dropout_frac))
    p["coarse_dropout_on"] = bool(rng.random() < spec.coarse_dropout_prob)
    p["coarse_dropout_frac"] = float(rng.uniform(*spec.coarse_dropout_frac))
    p["coarse_dropout_count"] = int(
        rng.integers(spec.coarse_dropout_count[0], spec.coarse_dropout_count[1] + 1)
    )
    p["intensity_add"] = [float(rng.uniform(*spec.intensity_add)) for _ in range(3)]
    p["hue_add"] = float(rng.uniform(*spec.hue_add))
    p["sat_add"] = float(rng.uniform(*spec.sat_add))
    p["intensity_mul"] = [float(rng.uniform(*spec.intensity_mul)) for _ in range(3)]
    p["aug_seed"] = int(rng.integers(0, 2**31 - 1))
    return p


def apply_photometric_params(img: np.ndarray, params: dict) -> np.ndarray:
    """Apply a sampled parameter set to a float32 RGB image in [0,255]."""
    out = img.astype(np.float32, copy=True)
    rng = np.random.default_rng(params["aug_seed"])

    if params["blur_on"]:
        kind = params["blur_kind"]
        if kind == "gaussian":
            if params["blur_sigma"] > 1e-3:
                out = ndimage.gaussian_filter(out, sigma=(params["blur_sigma"],) * 2 + (0,))
        elif kind == "average":
            out = ndimage.uniform_filter(out, size=(params["blur_kernel"],) * 2 + (1,))
        else:
            out = ndimage.median_filter(out, size=(params["blur_kernel"],) * 2 + (1,))

    if params["noise_on"] and params["noise_std"] > 0:
        out = out + rng.normal(0.0, params["noise_std"], size=out.shape).astype(np.float32)

    if params["pixel_dropout_on"] and params["pixel_dropout_frac"] > 0:
        drop = rng.random(out.shape[:2]) < params["pixel_dropout_frac"]
        out[drop] = 0.0

    if params["coarse_dropout_on"]:
        h, w = out.shape[:2]
        edge = max(1, int(round(params["coarse_dropout_frac"] * w)))
        for _ in range(params["coarse_dropout_count"]):
            cy = int(rng.integers(0, max(1, h - edge)))
            cx = int(rng.integers(0, max(1, w - edge)))
            out[cy : cy + edge, cx : cx + edge] = 0.0

    out = out + np.array(params["intensity_add"], dtype=np.float32)

    if params["hue_add"] or params["sat_add"]:
        hsv = rgb_to_hsv255(np.clip(out, 0, 255))
        hsv[..., 0] += params["hue_add"]
        hsv[..., 1] += params["sat_add"]
        out = hsv255_to_rgb(hsv)

    out = out * np.array(params["intensity_mul"], dtype=np.float32)
    return np.clip(out, 0, 255)


def apply_photometric(
    img: np.ndarray, rng: np.random.Generator, spec: AugmentationSpec
) -> tuple[np.ndarray, dict]:
    params = sample_photometric_params(rng, spec)
    return apply_photometric_params(img, params), params


def motion_blur(img: np.ndarray, length: int, angle_deg: float) -> np.ndarray:
    """Directional blur with a line kernel."""
    length = max(1, int(length))
    kern = np.zeros((length, length), dtype=np.float32)
    kern[length // 2, :] = 1.0
    if angle_deg:
        kern = ndimage.rotate(kern, angle_deg, reshape=False, order=1)
    s = kern.sum()
    if s <= 0:
        return img
    kern /= s
    out = np.empty_like(img, dtype=np.float32)
    for c in range(img.shape[2]):
        out[..., c] = ndimage.convolve(img[..., c].astype(np.float32), kern, mode="nearest")
    return out


def contrast_brightness(img: np.ndarray, contrast: float, brightness: float) -> np.ndarray:
    return np.clip((img.astype(np.float32) - 127.5) * contrast + 127.5 + brightness, 0, 255)


# Families available to the embedding-model training loop; a random subset of
# up to three is applied per image.
def random_augment_subset(
    img: np.ndarray, rng: np.random.Generator, max_ops: int = 3
) -> np.ndarray:
    """Apply up to ``max_ops`` randomly chosen augmentations to an RGB image."""
    ops = ["rotate", "gauss_blur", "gauss_noise", "channel_dropout",
           "contrast", "brightness", "hue", "saturation"]
    k = int(rng.integers(0, max_ops + 1))
    if k == 0:
        return img
    chosen = rng.choice(ops, size=k, replace=False)
    out = img.astype(np.float32, copy=True)
    for op in chosen:
        if op == "rotate":
            ang = float(rng.uniform(-12, 12))
            out = ndimage.rotate(out, ang, axes=(0, 1), reshape=False, order=1, cval=0.0)
        elif op == "gauss_blur":
            out = ndimage.gaussian_filter(out, sigma=(float(rng.uniform(0.3, 1.2)),) * 2 + (0,))
        elif op == "gauss_noise":
            out = out + rng.normal(0, float(rng.uniform(2, 8)), size=out.shape)
        elif op == "channel_dropout":
            ch = int(rng.integers(0, 3))
            out[..., ch] *= float(rng.uniform(0.0, 0.5))
        elif op == "contrast":
            out = contrast_brightness(out, float(rng.uniform(0.7, 1.3)), 0.0)
        elif op == "brightness":
            out = contrast_brightness(out, 1.0, float(rng.uniform(-25, 25)))
        elif op == "hue":
            hsv = rgb_to_hsv255(np.clip(out, 0, 255))
            hsv[..., 0] += float(rng.uniform(-15, 15))
            out = hsv255_to_rgb(hsv)
        elif op == "saturation":
            hsv = rgb_to_hsv255(np.clip(out, 0, 255))
            hsv[..., 1] += float(rng.uniform(-25, 25))
            out = hsv255_to_rgb(hsv)
    return np.clip(out, 0, 255)

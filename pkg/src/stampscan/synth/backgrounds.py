"""Procedural passport-page background textures.

Stands in for a bundled pool of paper/texture photographs: each background is
a light paper tone with low-frequency mottling, guilloche-style wave lines and
faint printed text, generated deterministically from a seed.
"""

from __future__ import annotations

import numpy as np
from PIL import Image, ImageDraw

from stampscan.synth.fonts import default_stamp_font, load_font


def _smooth_noise(rng: np.random.Generator, h: int, w: int, cells: int) -> np.ndarray:
    """Low-frequency noise in [0,1] from an upscaled coarse grid."""
    coarse = rng.uniform(0.0, 1.0, size=(cells, cells)).astype(np.float32)
    img = Image.fromarray((coarse * 255).astype(np.uint8)).resize((w, h), Image.BILINEAR)
    return np.asarray(img).astype(np.float32) / 255.0


def make_background(seed: int, width: int = 640, height: int = 640) -> np.ndarray:
    """One synthetic page texture as float32 RGB in [0,255]."""
    rng = np.random.default_rng(np.random.SeedSequence([0xB6, seed]))
    base = np.array(
        [rng.uniform(200, 245), rng.uniform(200, 245), rng.uniform(195, 240)],
        dtype=np.float32,
    )
    img = np.ones((height, width, 3), dtype=np.float32) * base

    # Paper mottling.
    mott = _smooth_noise(rng, height, width, int(rng.integers(4, 12)))
    img += (mott[..., None] - 0.5) * rng.uniform(8, 24)

    # Guilloche-style wave lines.
    canvas = Image.fromarray(np.clip(img, 0, 255).astype(np.uint8))
    draw = ImageDraw.Draw(canvas)
    line_color = tuple(int(c) for c in np.clip(base - rng.uniform(15, 45), 0, 255))
    n_waves = int(rng.integers(6, 16))
    amp = rng.uniform(4, 18)
    freq = rng.uniform(0.01, 0.05)
    phase0 = rng.uniform(0, 2 * np.pi)
    for k in range(n_waves):
        y0 = (k + 0.5) * height / n_waves
        pts = [
            (x, y0 + amp * np.sin(freq * x + phase0 + 0.7 * k))
            for x in range(0, width, 6)
        ]
        draw.line(pts, fill=line_color, width=1)

    # Faint printed text rows.
    font = load_font(default_stamp_font(), max(10, int(rng.integers(12, 20))))
    text_color = tuple(int(c) for c in np.clip(base - rng.uniform(25, 60), 0, 255))
    letters = np.array(list("ABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789<"))
    for _ in range(int(rng.integers(2, 7))):
        tx = int(rng.integers(0, max(1, width - 200)))
        ty = int(rng.integers(0, max(1, height - 24)))
        word = "".join(rng.choice(letters, size=int(rng.integers(6, 18))))
        draw.text((tx, ty), word, font=font, fill=text_color)

    out = np.asarray(canvas).astype(np.float32)
    speckle = rng.normal(0.0, rng.uniform(0.5, 2.5), size=out.shape).astype(np.float32)
    return np.clip(out + speckle, 0, 255)


def background_pool(seed: int, count: int = 80, width: int = 640, height: int = 640) -> list[np.ndarray]:
    """Deterministic pool of ``count`` distinct background textures."""
    return [make_background(seed * 100003 + i, width, height) for i in range(count)]

"""Procedural stamp artwork.

Forged stamps stand in for real segmented stamp imagery so the whole system
can be trained from scratch. Per-class artwork (frame, ink hue, lettering,
decorations) is a pure function of the country code, while the instance seed
only jitters ink and erosion; entry and exit stamps of one country therefore
differ only inside the direction region.
"""

from __future__ import annotations

import datetime
import hashlib
from dataclasses import dataclass, field

import numpy as np
from PIL import Image, ImageDraw

from stampscan.geometry import DEFAULT_TEMPLATE
from stampscan.synth.augment import hsv255_to_rgb
from stampscan.synth.fonts import default_stamp_font, font_paths, load_font

DIRECTIONS = ("entry", "exit")

# Schengen members at the time the layout was standardized; deployments may
# override via configuration as membership changes.
DEFAULT_SCHENGEN_CODES = (
    "AT", "BE", "CH", "CZ", "DE", "DK", "EE", "ES", "FI", "FR", "GR", "HU",
    "IS", "IT", "LI", "LT", "LU", "LV", "MT", "NL", "NO", "PL", "PT", "SE",
    "SI", "SK",
)


@dataclass
class StampAsset:
    """A segmented stamp: RGBA image whose alpha channel is the ink mask."""

    image: np.ndarray
    country_code: str
    direction: str
    source: str = "forged"  # manual | model_segmented | forged
    asset_id: str = ""
    date_text: str | None = None
    separator: str | None = None
    digit_boxes: list[tuple[float, float, float, float]] = field(default_factory=list)
    style: str = "schengen"

    def __post_init__(self):
        if not self.country_code:
            raise ValueError("country code must be nonempty")
        if self.direction not in DIRECTIONS:
            raise ValueError(f"direction must be one of {DIRECTIONS}")
        img = np.asarray(self.image)
        if img.ndim != 3 or img.shape[2] != 4:
            raise ValueError("asset image must be RGBA")
        opaque = float((img[:, :, 3] > 0).mean())
        if opaque < 0.01:
            raise ValueError(f"alpha channel nearly empty ({opaque:.2%} opaque)")

    @property
    def class_label(self) -> tuple[str, str]:
        return (self.country_code, self.direction)

    @property
    def size(self) -> tuple[int, int]:
        """(width, height) in pixels."""
        return self.image.shape[1], self.image.shape[0]


def _stable_int(*parts: str) -> int:
    digest = hashlib.sha256(":".join(parts).encode()).digest()
    return int.from_bytes(digest[:8], "little")


def _hsv(h: float, s: float, v: float) -> tuple[int, int, int]:
    rgb = hsv255_to_rgb(np.array([[[h, s * 255.0, v * 255.0]]], dtype=np.float32))[0, 0]
    return tuple(int(round(c)) for c in rgb)


_INK_HUES = [148, 155, 163, 170, 5, 245, 90, 200, 178]  # blues, reds, greens, violets


def _fit_font(path: str, text: str, box_w: float, box_h: float):
    size = max(8, int(box_h * 0.9))
    font = load_font(path, size)
    while size > 8 and font.getlength(text) > box_w * 0.96:
        size -= 2
        font = load_font(path, size)
    return font


def _smooth_field(rng: np.random.Generator, h: int, w: int, cells: int) -> np.ndarray:
    coarse = rng.uniform(0.0, 1.0, size=(cells, max(2, int(cells * w / h)))).astype(np.float32)
    img = Image.fromarray((coarse * 255).astype(np.uint8)).resize((w, h), Image.BILINEAR)
    return np.asarray(img).astype(np.float32) / 255.0


def _erode_alpha(alpha: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Partial-ink effect: blotchy attenuation plus pinholes."""
    h, w = alpha.shape
    blotch = _smooth_field(rng, h, w, 10)
    factor = 0.62 + 0.38 * blotch
    holes = rng.random((h, w)) < 0.02
    factor = np.where(holes, factor * 0.25, factor)
    return np.clip(alpha.astype(np.float32) * factor, 0, 255).astype(np.uint8)


def _draw_direction_glyph(draw: ImageDraw.ImageDraw, box, direction: str, width: int):
    """Arrow-and-bar crossing glyph; the bar sits on the side the arrow points
    to for entry and behind it for exit."""
    x0, y0, x1, y1 = box
    ym = (y0 + y1) / 2
    bar_w = max(3, width)
    head = (y1 - y0) * 0.32
    if direction == "entry":
        shaft = (x0 + 4, ym, x1 - bar_w - 10 - head, ym)
        head_tip = x1 - bar_w - 8
        bar_x = x1 - bar_w - 4
    else:
        bar_x = x0 + 4
        shaft = (x0 + bar_w + 10, ym, x1 - 8 - head, ym)
        head_tip = x1 - 6
    draw.line(shaft, fill=255, width=width)
    draw.polygon(
        [(head_tip, ym), (head_tip - head, ym - head * 0.7), (head_tip - head, ym + head * 0.7)],
        fill=255,
    )
    draw.rectangle([bar_x, y0 + 2, bar_x + bar_w, y1 - 2], fill=255)


def _draw_text_boxes(draw, xy, text, font, record: list | None = None):
    """Draw ``text`` char by char, recording each digit's ink box."""
    x, y = xy
    for ch in text:
        bb = font.getbbox(ch)
        if ch.isdigit() and record is not None:
            record.append((x + bb[0], y + bb[1], x + bb[2], y + bb[3]))
        draw.text((x, y), ch, font=font, fill=255)
        x += font.getlength(ch)


def _date_text(date: datetime.date, separator: str) -> str:
    return f"{date.day:02d}{separator}{date.month:02d}{separator}{date.year % 100:02d}"


def forge_stamp(
    seed: int,
    country_code: str,
    direction: str,
    date: datetime.date,
    style: str = "schengen",
    height: int = 240,
    separator: str | None = None,
    allowed_codes: tuple[str, ...] | None = None,
) -> StampAsset:
    """Draw one stamp deterministically from (seed, class, date).

    Schengen style follows the template layout: country code top-left,
    direction glyph top-right, six-digit date in the middle band.
    """
    if direction not in DIRECTIONS:
        raise ValueError(f"direction must be one of {DIRECTIONS}")
    if style == "schengen":
        codes = allowed_codes if allowed_codes is not None else DEFAULT_SCHENGEN_CODES
        if country_code not in codes:
            raise ValueError(f"unknown country code {country_code!r}")
    elif not country_code:
        raise ValueError("unknown country code ''")
    if not isinstance(date, datetime.date):
        raise ValueError("date must be a datetime.date")

    style_rng = np.random.default_rng(_stable_int("style", style, country_code))
    ss = np.random.SeedSequence([0x57A3, seed])
    ink_rng, erosion_rng = [np.random.default_rng(c) for c in ss.spawn(2)]

    if separator is None:
        separator = "-" if ink_rng.random() < 0.5 else "."
    elif separator not in ("-", "."):
        raise ValueError("separator must be '-' or '.'")

    if style == "schengen":
        return _forge_schengen(
            style_rng, ink_rng, erosion_rng, country_code, direction, date, separator, height
        )
    return _forge_generic(
        style_rng, ink_rng, erosion_rng, country_code, direction, date, separator, height
    )


def _ink_color(style_rng: np.random.Generator, ink_rng: np.random.Generator):
    hue = float(style_rng.choice(_INK_HUES)) + float(ink_rng.uniform(-6, 6))
    sat = float(style_rng.uniform(0.55, 0.9)) + float(ink_rng.uniform(-0.05, 0.05))
    val = float(style_rng.uniform(0.25, 0.5)) + float(ink_rng.uniform(-0.04, 0.04))
    return _hsv(hue % 255, min(max(sat, 0), 1), min(max(val, 0.05), 1))


def _forge_schengen(style_rng, ink_rng, erosion_rng, country, direction, date, sep, height):
    w, h = int(round(height * 1.5)), height
    ink = Image.new("L", (w, h), 0)
    draw = ImageDraw.Draw(ink)
    color = _ink_color(style_rng, ink_rng)

    frame_w = int(style_rng.integers(4, 8))
    radius = int(style_rng.uniform(0.08, 0.2) * h)
    draw.rounded_rectangle([3, 3, w - 4, h - 4], radius=radius, outline=255, width=frame_w)

    def box(name):
        x0, y0, x1, y1 = DEFAULT_TEMPLATE[name]
        return (x0 * w, y0 * h, x1 * w, y1 * h)

    font_path = default_stamp_font()

    cx0, cy0, cx1, cy1 = box("country")
    font = _fit_font(font_path, country, cx1 - cx0, cy1 - cy0)
    bb = font.getbbox(country)
    tx = cx0 + ((cx1 - cx0) - (bb[2] - bb[0])) / 2 - bb[0]
    ty = cy0 + ((cy1 - cy0) - (bb[3] - bb[1])) / 2 - bb[1]
    _draw_text_boxes(draw, (tx, ty), country, font)

    _draw_direction_glyph(draw, box("direction"), direction, width=max(3, frame_w - 2))

    dx0, dy0, dx1, dy1 = box("date")
    text = _date_text(date, sep)
    dfont = _fit_font(font_path, text, dx1 - dx0, (dy1 - dy0) * 0.95)
    dbb = dfont.getbbox(text)
    tx = dx0 + ((dx1 - dx0) - (dbb[2] - dbb[0])) / 2 - dbb[0]
    ty = dy0 + ((dy1 - dy0) - (dbb[3] - dbb[1])) / 2 - dbb[1]
    digit_boxes: list = []
    _draw_text_boxes(draw, (tx, ty), text, dfont, record=digit_boxes)

    # Crossing-point line: per-class constant lettering.
    letters = "ABCDEFGHIJKLMNOPQRSTUVWXYZ"
    site = "".join(style_rng.choice(list(letters), size=int(style_rng.integers(4, 9))))
    site_font = _fit_font(font_path, site, 0.6 * w, 0.12 * h)
    sbb = site_font.getbbox(site)
    _draw_text_boxes(
        draw, ((w - (sbb[2] - sbb[0])) / 2 - sbb[0], 0.78 * h - sbb[1]), site, site_font
    )

    alpha = _erode_alpha(np.asarray(ink), erosion_rng)
    rgba = np.empty((h, w, 4), dtype=np.uint8)
    rgba[:, :, 0], rgba[:, :, 1], rgba[:, :, 2] = color
    rgba[:, :, 3] = alpha
    return StampAsset(
        image=rgba,
        country_code=country,
        direction=direction,
        source="forged",
        date_text=text,
        separator=sep,
        digit_boxes=digit_boxes,
        style="schengen",
    )


def _forge_generic(style_rng, ink_rng, erosion_rng, country, direction, date, sep, height):
    aspect = float(style_rng.uniform(1.0, 1.8))
    w, h = int(round(height * aspect)), height
    ink = Image.new("L", (w, h), 0)
    draw = ImageDraw.Draw(ink)
    color = _ink_color(style_rng, ink_rng)

    frame_w = int(style_rng.integers(3, 8))
    shape = str(style_rng.choice(["oval", "rect", "rounded", "double_oval", "double_rect"]))
    if shape in ("oval", "double_oval"):
        draw.ellipse([3, 3, w - 4, h - 4], outline=255, width=frame_w)
        if shape == "double_oval":
            draw.ellipse([14, 14, w - 15, h - 15], outline=255, width=2)
    else:
        radius = 0 if shape == "rect" else int(0.15 * h)
        draw.rounded_rectangle([3, 3, w - 4, h - 4], radius=radius, outline=255, width=frame_w)
        if shape == "double_rect":
            draw.rounded_rectangle([14, 14, w - 15, h - 15], radius=max(0, radius - 6),
                                   outline=255, width=2)

    font_path = str(style_rng.choice(list(font_paths())))
    name_y = float(style_rng.uniform(0.16, 0.3))
    font = _fit_font(font_path, country, 0.62 * w, 0.22 * h)
    bb = font.getbbox(country)
    _draw_text_boxes(
        draw, ((w - (bb[2] - bb[0])) / 2 - bb[0], name_y * h - bb[1]), country, font
    )

    glyph_y0 = float(style_rng.uniform(0.42, 0.55))
    gx0, gx1 = 0.3 * w, 0.7 * w
    _draw_direction_glyph(
        draw, (gx0, glyph_y0 * h, gx1, (glyph_y0 + 0.18) * h), direction, width=max(3, frame_w - 1)
    )

    # Per-class decorations: dots or ticks at deterministic positions.
    for _ in range(int(style_rng.integers(0, 6))):
        px = float(style_rng.uniform(0.12, 0.88)) * w
        py = float(style_rng.choice([0.1, 0.88])) * h
        r = float(style_rng.uniform(2, 5))
        draw.ellipse([px - r, py - r, px + r, py + r], fill=255)

    digit_boxes: list = []
    if style_rng.random() < 0.7:
        text = _date_text(date, sep)
        dfont = _fit_font(font_path, text, 0.5 * w, 0.13 * h)
        dbb = dfont.getbbox(text)
        _draw_text_boxes(
            draw,
            ((w - (dbb[2] - dbb[0])) / 2 - dbb[0], 0.68 * h - dbb[1]),
            text,
            dfont,
            record=digit_boxes,
        )

    alpha = _erode_alpha(np.asarray(ink), erosion_rng)
    rgba = np.empty((h, w, 4), dtype=np.uint8)
    rgba[:, :, 0], rgba[:, :, 1], rgba[:, :, 2] = color
    rgba[:, :, 3] = alpha
    return StampAsset(
        image=rgba,
        country_code=country,
        direction=direction,
        source="forged",
        date_text=_date_text(date, sep) if digit_boxes else None,
        separator=sep if digit_boxes else None,
        digit_boxes=digit_boxes,
        style="generic",
    )


def render_digit_glyph(
    font_path: str, digit: str, px_height: int, erosion_rng: np.random.Generator | None = None
) -> np.ndarray:
    """One digit as a tight alpha patch, optionally ink-eroded."""
    font = load_font(font_path, px_height)
    bb = font.getbbox(digit)
    pad = 2
    img = Image.new("L", (bb[2] - bb[0] + 2 * pad, bb[3] - bb[1] + 2 * pad), 0)
    ImageDraw.Draw(img).text((pad - bb[0], pad - bb[1]), digit, font=font, fill=255)
    alpha = np.asarray(img)
    if erosion_rng is not None:
        alpha = _erode_alpha(alpha, erosion_rng)
    return alpha

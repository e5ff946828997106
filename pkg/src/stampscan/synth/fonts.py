"""Font discovery for glyph rendering.

Collects TTF files from system font directories plus matplotlib's bundled
set when available. Symbol-only faces are filtered out.
"""

from __future__ import annotations

import glob
import os
from functools import lru_cache

from PIL import ImageFont

_SYSTEM_DIRS = ["/usr/share/fonts", os.path.expanduser("~/.fonts")]

# Math/symbol faces that lack ordinary digits and latin capitals.
_EXCLUDE = ("cmex", "cmsy", "cmmi", "SizOneSym", "SizTwoSym", "SizThreeSym",
            "SizFourSym", "SizFiveSym", "NonUni")


@lru_cache(maxsize=1)
def font_paths() -> tuple[str, ...]:
    paths = set()
    for root in _SYSTEM_DIRS:
        paths.update(glob.glob(os.path.join(root, "**", "*.ttf"), recursive=True))
    try:
        import matplotlib

        mpl_fonts = os.path.join(matplotlib.get_data_path(), "fonts", "ttf")
        paths.update(glob.glob(os.path.join(mpl_fonts, "*.ttf")))
    except ImportError:
        pass
    keep = [p for p in sorted(paths) if not any(tok in os.path.basename(p) for tok in _EXCLUDE)]
    if not keep:
        raise RuntimeError("no usable TTF fonts found")
    return tuple(keep)


def load_font(path: str, size: int) -> ImageFont.FreeTypeFont:
    return ImageFont.truetype(path, size=size)


def default_stamp_font() -> str:
    """A bold sans face for stamp lettering; falls back to the first font."""
    for p in font_paths():
        if "DejaVuSans-Bold" in p:
            return p
    return font_paths()[0]

"""Software rasterizer: FigureSpec -> 8-bit RGB raster, no text, no anti-aliasing."""

from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np
from PIL import Image

from ..colors import COLOR_RGB
from ..errors import CanvasTooSmall
from .spec import FigureSpec, FigureType

MARGIN = 3
AXIS_COLOR = (0, 0, 0)
MIN_CANVAS = 32


@dataclass
class RasterImage:
    pixels: np.ndarray  # (height, width, 3) uint8, row-major

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def data(self) -> bytes:
        return self.pixels.tobytes()

    def to_png_bytes(self) -> bytes:
        buf = io.BytesIO()
        Image.fromarray(self.pixels, mode="RGB").save(buf, format="PNG")
        return buf.getvalue()

    def save_png(self, path) -> None:
        Image.fromarray(self.pixels, mode="RGB").save(path, format="PNG")

    @staticmethod
    def load_png(path) -> "RasterImage":
        with Image.open(path) as im:
            return RasterImage(np.asarray(im.convert("RGB"), dtype=np.uint8))


def _paint(img: np.ndarray, r: int, c: int, color, thickness: int = 1) -> None:
    h, w = img.shape[:2]
    r0, r1 = max(0, r), min(h, r + thickness)
    c0, c1 = max(0, c), min(w, c + thickness)
    if r0 < r1 and c0 < c1:
        img[r0:r1, c0:c1] = color


def _draw_segment(img, r0: float, c0: float, r1: float, c1: float, color, thickness: int) -> None:
    steps = int(max(abs(r1 - r0), abs(c1 - c0))) + 1
    for k in range(steps + 1):
        t = k / steps
        r = int(r0 + t * (r1 - r0) + 0.5)
        c = int(c0 + t * (c1 - c0) + 0.5)
        _paint(img, r, c, color, thickness)


def _draw_axes(img: np.ndarray) -> None:
    h, w = img.shape[:2]
    img[h - MARGIN - 1, MARGIN : w - MARGIN] = AXIS_COLOR
    img[MARGIN : h - MARGIN, MARGIN] = AXIS_COLOR


def _bar_extent(value: float, span: int) -> int:
    # round-half-up keeps the extent monotone in the value
    return max(1, int(value / 100.0 * span + 0.5))


def render(spec: FigureSpec) -> RasterImage:
    """Rasterize a figure; a pure function of the spec (byte-identical reruns)."""
    h, w = spec.canvas
    if h < MIN_CANVAS or w < MIN_CANVAS:
        raise CanvasTooSmall(f"canvas {h}x{w} below minimum {MIN_CANVAS}x{MIN_CANVAS}")

    img = np.full((h, w, 3), 255, dtype=np.uint8)
    colors = [COLOR_RGB[s.label] for s in spec.series]
    n = len(spec.series)

    top, bottom = MARGIN, h - MARGIN - 1  # bottom row is the x axis
    left, right = MARGIN + 1, w - MARGIN  # col MARGIN is the y axis
    plot_h = bottom - top
    plot_w = right - left

    if spec.figure_type == FigureType.VBAR:
        _draw_axes(img)
        gap = 1 if (plot_w - (n - 1)) // n >= 1 else 0
        bar_w = max(1, (plot_w - (n - 1) * gap) // n)
        for i, s in enumerate(spec.series):
            height = _bar_extent(s.values[0], plot_h)
            c0 = left + i * (bar_w + gap)
            img[bottom - height : bottom, c0 : c0 + bar_w] = colors[i]
    elif spec.figure_type == FigureType.HBAR:
        _draw_axes(img)
        gap = 1 if (plot_h - (n - 1)) // n >= 1 else 0
        bar_h = max(1, (plot_h - (n - 1) * gap) // n)
        for i, s in enumerate(spec.series):
            length = _bar_extent(s.values[0], plot_w)
            r0 = top + i * (bar_h + gap)
            img[r0 : r0 + bar_h, left : left + length] = colors[i]
    elif spec.figure_type == FigureType.PIE:
        cy, cx = (h - 1) / 2.0, (w - 1) / 2.0
        radius = min(h, w) / 2.0 - MARGIN
        total = sum(s.values[0] for s in spec.series)
        bounds = np.cumsum([s.values[0] / total for s in spec.series]) * 2.0 * np.pi
        yy, xx = np.mgrid[0:h, 0:w]
        dy, dx = yy - cy, xx - cx
        inside = dy * dy + dx * dx <= radius * radius
        theta = np.mod(np.arctan2(dy, dx), 2.0 * np.pi)
        wedge = np.searchsorted(bounds, theta, side="left")
        wedge = np.minimum(wedge, n - 1)
        palette = np.array(colors, dtype=np.uint8)
        img[inside] = palette[wedge[inside]]
    else:  # LINE or DOTLINE
        _draw_axes(img)
        xs = np.asarray(spec.x_points)
        span = xs[-1] - xs[0]
        cols = left + (xs - xs[0]) / span * (plot_w - 1)
        for i, s in enumerate(spec.series):
            rows = bottom - 1 - np.asarray(s.values) / 100.0 * (plot_h - 1)
            for j in range(len(xs) - 1):
                _draw_segment(img, rows[j], cols[j], rows[j + 1], cols[j + 1], colors[i], 2)
            if spec.figure_type == FigureType.DOTLINE:
                for j in range(len(xs)):
                    _paint(img, int(rows[j] + 0.5) - 1, int(cols[j] + 0.5) - 1, colors[i], 3)

    return RasterImage(img)

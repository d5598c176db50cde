"""Grayscale canvas and exact segment rasterization.

Coverage rule: a pixel is painted iff its center lies within
stroke_width / 2 of the segment (center-in-capsule test, no anti-aliasing).
Pixel (ix, iy) has its center at (ix + 0.5, iy + 0.5); x runs along
columns, y along rows.  The rule is intentionally simple so a brute-force
per-pixel distance check reproduces the output bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numba import njit

from .errors import InvalidGeometryError, InvalidParameterError


@dataclass
class Canvas:
    """An 8-bit grayscale raster, background-filled on creation."""

    width: int
    height: int
    pixels: np.ndarray = field(repr=False)
    background: int = 0
    foreground: int = 255

    def __post_init__(self) -> None:
        if self.width < 1 or self.height < 1:
            raise InvalidParameterError("canvas dimensions must be positive")
        if self.pixels.dtype != np.uint8 or self.pixels.shape != (self.height, self.width):
            raise InvalidParameterError(
                f"pixel array must be uint8 of shape ({self.height}, {self.width})"
            )

    @classmethod
    def blank(cls, width: int, height: int, background: int = 0, foreground: int = 255) -> "Canvas":
        pixels = np.full((height, width), background, dtype=np.uint8)
        return cls(width=width, height=height, pixels=pixels,
                   background=background, foreground=foreground)

    def copy(self) -> "Canvas":
        return Canvas(self.width, self.height, self.pixels.copy(),
                      self.background, self.foreground)

    def foreground_count(self) -> int:
        """Number of pixels that differ from the background intensity."""
        return int(np.count_nonzero(self.pixels != self.background))

    def foreground_ratio(self) -> float:
        return self.foreground_count() / (self.width * self.height)


@njit(cache=True)
def _capsule_fill(pixels, ix0, ix1, iy0, iy1, x0, y0, dx, dy, len2, h2, value):
    for iy in range(iy0, iy1 + 1):
        ey = (iy + 0.5) - y0
        for ix in range(ix0, ix1 + 1):
            ex = (ix + 0.5) - x0
            if len2 > 0.0:
                t = (ex * dx + ey * dy) / len2
                if t < 0.0:
                    t = 0.0
                elif t > 1.0:
                    t = 1.0
            else:
                t = 0.0
            qx = ex - t * dx
            qy = ey - t * dy
            if qx * qx + qy * qy <= h2:
                pixels[iy, ix] = value


@njit(cache=True)
def _segments_fill(pixels, xs0, ys0, xs1, ys1, hw, value):
    """Batch capsule fill; identical per-segment semantics to _capsule_fill."""
    height, width = pixels.shape
    h2 = hw * hw
    for s in range(xs0.shape[0]):
        x0 = xs0[s]
        y0 = ys0[s]
        x1 = xs1[s]
        y1 = ys1[s]
        if x1 < x0 or (x1 == x0 and y1 < y0):
            x0, y0, x1, y1 = x1, y1, x0, y0
        xlo = min(x0, x1) - hw - 1.0
        xhi = max(x0, x1) + hw + 1.0
        ylo = min(y0, y1) - hw - 1.0
        yhi = max(y0, y1) + hw + 1.0
        if xlo < 0.0:
            xlo = 0.0
        if ylo < 0.0:
            ylo = 0.0
        if xhi > width - 1.0:
            xhi = width - 1.0
        if yhi > height - 1.0:
            yhi = height - 1.0
        if xlo > xhi or ylo > yhi:
            continue
        dx = x1 - x0
        dy = y1 - y0
        _capsule_fill(pixels, int(xlo), int(xhi), int(ylo), int(yhi),
                      x0, y0, dx, dy, dx * dx + dy * dy, h2, value)


def rasterize_segment(canvas: Canvas, p, q, stroke_width: float, intensity: int | None = None) -> Canvas:
    """Paint the segment pq onto the canvas in place and return it.

    Pixels outside the canvas are clipped silently; swapping p and q gives
    an identical result.
    """
    x0, y0 = float(p[0]), float(p[1])
    x1, y1 = float(q[0]), float(q[1])
    if not (math.isfinite(x0) and math.isfinite(y0) and math.isfinite(x1) and math.isfinite(y1)):
        raise InvalidGeometryError(f"segment endpoints must be finite, got {p!r} -> {q!r}")
    # Canonical endpoint order makes coverage bit-exactly symmetric: boundary
    # ties (dist^2 == hw^2) would otherwise round differently from each end.
    if (x1, y1) < (x0, y0):
        x0, y0, x1, y1 = x1, y1, x0, y0
    if not math.isfinite(stroke_width) or stroke_width < 0:
        raise InvalidParameterError(f"stroke width must be finite and >= 0, got {stroke_width}")
    value = canvas.foreground if intensity is None else int(intensity)

    hw = stroke_width * 0.5
    ix0 = max(int(math.floor(min(x0, x1) - hw)) - 1, 0)
    ix1 = min(int(math.ceil(max(x0, x1) + hw)) + 1, canvas.width - 1)
    iy0 = max(int(math.floor(min(y0, y1) - hw)) - 1, 0)
    iy1 = min(int(math.ceil(max(y0, y1) + hw)) + 1, canvas.height - 1)
    if ix0 > ix1 or iy0 > iy1:
        return canvas

    dx = x1 - x0
    dy = y1 - y0
    _capsule_fill(canvas.pixels, ix0, ix1, iy0, iy1, x0, y0, dx, dy,
                  dx * dx + dy * dy, hw * hw, np.uint8(value))
    return canvas


def rasterize_polyline(canvas: Canvas, vertices, stroke_width: float,
                       intensity: int | None = None) -> Canvas:
    """Paint every edge of a vertex chain; one kernel call for the whole path."""
    pts = np.ascontiguousarray(vertices, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] < 2:
        raise InvalidGeometryError("polyline needs an (n >= 2, 2) vertex array")
    return rasterize_segments(canvas, pts[:-1, 0], pts[:-1, 1], pts[1:, 0], pts[1:, 1],
                              stroke_width, intensity)


def rasterize_segments(canvas: Canvas, xs0, ys0, xs1, ys1, stroke_width: float,
                       intensity: int | None = None) -> Canvas:
    """Paint a batch of independent segments (same coverage rule as one-at-a-time)."""
    arrays = [np.ascontiguousarray(a, dtype=np.float64) for a in (xs0, ys0, xs1, ys1)]
    if not all(np.all(np.isfinite(a)) for a in arrays):
        raise InvalidGeometryError("segment endpoints must be finite")
    if not math.isfinite(stroke_width) or stroke_width < 0:
        raise InvalidParameterError(f"stroke width must be finite and >= 0, got {stroke_width}")
    value = canvas.foreground if intensity is None else int(intensity)
    _segments_fill(canvas.pixels, *arrays, stroke_width * 0.5, np.uint8(value))
    return canvas


def splat_points(canvas: Canvas, points, intensity: int | None = None) -> Canvas:
    """Set the single pixel containing each point; out-of-canvas points are dropped."""
    value = canvas.foreground if intensity is None else int(intensity)
    pts = np.asarray(points, dtype=np.float64)
    if pts.size == 0:
        return canvas
    ix = np.floor(pts[:, 0]).astype(np.int64)
    iy = np.floor(pts[:, 1]).astype(np.int64)
    keep = (ix >= 0) & (ix < canvas.width) & (iy >= 0) & (iy < canvas.height)
    canvas.pixels[iy[keep], ix[keep]] = np.uint8(value)
    return canvas

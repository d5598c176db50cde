"""Radial contour shapes: nested n-gon rings grown outward with Perlin jitter.

A shape is a union of N rings.  Ring 1 is an n-gon stretched by the resize
pair o; every later ring copies the previous one and pushes each vertex
along its own angular direction by line_width plus scaled noise.  Class
identity is the parameter set; instance identity is the seed, which picks
the noise sequences and the drawing center.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateImageError, InvalidParameterError
from .perlin import perlin1d_matrix
from .raster import Canvas, rasterize_polyline, rasterize_segments
from .seeds import TAG_CENTER, TAG_NOISE, Seed, derive_seed, derive_seed_array

# Class parameter ranges; integer fields inclusive on both ends.
NUM_POLYGONS_RANGE = (1, 200)
NUM_VERTICES_RANGE = (3, 502)
RADIUS_RANGE = (0.0, 100.0)
LINE_WIDTH_RANGE = (0.0, 0.1)
RESIZE_RANGE = (1.0, 4.0)
NOISE_SCALE_RANGE = (0.0, 4.0)

# Auto-fit margin: the shape's bounding box spans 90% of the canvas.
FIT_FRACTION = 0.9
# The drawing center is drawn uniformly from the central half of the canvas.
CENTER_REGION = (0.25, 0.75)


@dataclass(frozen=True)
class RcdbParams:
    """One radial-contour class: (N, n, r, l_w, o, lambda)."""

    num_polygons: int
    num_vertices: int
    radius: float
    line_width: float
    resize: tuple[float, float]
    noise_scale: tuple[float, float]

    def __post_init__(self) -> None:
        def check(name, value, lo, hi):
            if not lo <= value <= hi:
                raise InvalidParameterError(f"{name}={value} outside [{lo}, {hi}]")

        check("num_polygons", self.num_polygons, *NUM_POLYGONS_RANGE)
        check("num_vertices", self.num_vertices, *NUM_VERTICES_RANGE)
        check("radius", self.radius, *RADIUS_RANGE)
        check("line_width", self.line_width, *LINE_WIDTH_RANGE)
        for i in range(2):
            check("resize", self.resize[i], *RESIZE_RANGE)
            check("noise_scale", self.noise_scale[i], *NOISE_SCALE_RANGE)

    def to_dict(self) -> dict:
        return {
            "num_polygons": self.num_polygons,
            "num_vertices": self.num_vertices,
            "radius": self.radius,
            "line_width": self.line_width,
            "resize": list(self.resize),
            "noise_scale": list(self.noise_scale),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "RcdbParams":
        return cls(
            num_polygons=int(d["num_polygons"]),
            num_vertices=int(d["num_vertices"]),
            radius=float(d["radius"]),
            line_width=float(d["line_width"]),
            resize=(float(d["resize"][0]), float(d["resize"][1])),
            noise_scale=(float(d["noise_scale"][0]), float(d["noise_scale"][1])),
        )


@dataclass(frozen=True)
class PolygonRing:
    """Closed ring of n vertices stored as n+1 rows with v[0] == v[n]."""

    vertices: np.ndarray
    index: int

    @property
    def n(self) -> int:
        return self.vertices.shape[0] - 1


def unit_directions(n: int) -> np.ndarray:
    """(cos, sin) of 2*pi*j/n for j = 0..n, exact at quarter turns.

    Plain cos/sin leave ~1e-16 residue at multiples of pi/2, which would
    break the advertised exact values for square-symmetric shapes.
    """
    j = np.arange(n + 1)
    frac = (j % n) / n
    ang = 2.0 * np.pi * frac
    dirs = np.stack([np.cos(ang), np.sin(ang)], axis=1)
    for value, exact in ((0.0, (1.0, 0.0)), (0.25, (0.0, 1.0)),
                         (0.5, (-1.0, 0.0)), (0.75, (0.0, -1.0))):
        dirs[frac == value] = exact
    return dirs


def first_polygon(n: int, r: float, o: tuple[float, float]) -> PolygonRing:
    """Innermost ring: an n-regular polygon of radius r stretched by o."""
    if n < 3:
        raise InvalidParameterError(f"a polygon needs at least 3 vertices, got {n}")
    if r < 0:
        raise InvalidParameterError(f"radius must be >= 0, got {r}")
    dirs = unit_directions(n)
    vertices = r * dirs * np.array([o[0], o[1]])
    vertices[n] = vertices[0]
    return PolygonRing(vertices=vertices, index=1)


def next_polygon(prev: PolygonRing, l_w: float, lam: tuple[float, float],
                 noise_column) -> PolygonRing:
    """Grow one ring outward.

    Vertex j moves by (l_w + lam * eps_j) along its angular direction
    (cos, sin of 2*pi*j/n).  noise_column carries one entry per distinct
    vertex (j = 0..n-1); the closing vertex reuses entry 0 so rings stay
    closed.
    """
    n = prev.n
    eps = np.asarray(noise_column, dtype=np.float64)
    if eps.shape != (n,):
        raise InvalidParameterError(
            f"noise column must have {n} entries (one per vertex), got shape {eps.shape}"
        )
    dirs = unit_directions(n)[:n]
    disp = np.empty((n, 2))
    disp[:, 0] = (l_w + lam[0] * eps) * dirs[:, 0]
    disp[:, 1] = (l_w + lam[1] * eps) * dirs[:, 1]
    vertices = np.empty((n + 1, 2))
    vertices[:n] = prev.vertices[:n] + disp
    vertices[n] = vertices[0]
    return PolygonRing(vertices=vertices, index=prev.index + 1)


def build_rings(params: RcdbParams, seed: Seed, perlin_frequency: float = 1.0) -> list[PolygonRing]:
    """All N rings of one instance in formula-space coordinates."""
    n, big_n = params.num_vertices, params.num_polygons
    rings = [first_polygon(n, params.radius, params.resize)]
    if big_n == 1:
        return rings
    # One noise sequence per vertex index, sampled along the ring axis.
    noise_seeds = derive_seed_array(seed.value, np.arange(n), 0, TAG_NOISE)
    noise = perlin1d_matrix(noise_seeds, big_n, perlin_frequency)
    for p in range(2, big_n + 1):
        rings.append(next_polygon(rings[-1], params.line_width,
                                  params.noise_scale, noise[:, p - 2]))
    return rings


@dataclass(frozen=True)
class ContourLayout:
    """Ring vertices mapped to pixel coordinates, plus the stroke width."""

    rings_px: list[np.ndarray]
    stroke_px: float
    center: tuple[float, float]
    scale: float


def layout_radial_contour(params: RcdbParams, seed: Seed, canvas_size: int = 512,
                          perlin_frequency: float = 1.0) -> ContourLayout:
    """Place an instance on the canvas.

    Formula-space coordinates are scaled so the full contour's bounding box
    spans FIT_FRACTION of the canvas, then translated to a seed-chosen
    center in the central half.  The stroke width shares the same scale
    with a 1-pixel floor so thin classes never vanish.
    """
    rings = build_rings(params, seed, perlin_frequency)
    all_vertices = np.concatenate([r.vertices for r in rings])
    lo = all_vertices.min(axis=0)
    hi = all_vertices.max(axis=0)
    extent = float(max(hi[0] - lo[0], hi[1] - lo[1]))
    scale = FIT_FRACTION * canvas_size / extent if extent > 0 else 1.0
    mid = (lo + hi) * 0.5

    rng = derive_seed(seed.value, 0, 0, TAG_CENTER).rng()
    cx = canvas_size * rng.uniform(*CENTER_REGION)
    cy = canvas_size * rng.uniform(*CENTER_REGION)

    rings_px = [(r.vertices - mid) * scale + np.array([cx, cy]) for r in rings]
    stroke_px = max(params.line_width * scale, 1.0)
    return ContourLayout(rings_px=rings_px, stroke_px=stroke_px,
                         center=(cx, cy), scale=scale)


def generate_radial_contour(params: RcdbParams, seed: Seed, canvas_size: int = 512,
                            perlin_frequency: float = 1.0) -> Canvas:
    """Render one instance as a binary white-on-black image."""
    layout = layout_radial_contour(params, seed, canvas_size, perlin_frequency)
    canvas = Canvas.blank(canvas_size, canvas_size)
    for ring in layout.rings_px:
        rasterize_polyline(canvas, ring, layout.stroke_px)
    if canvas.foreground_count() == 0:
        raise DegenerateImageError("all contour geometry fell outside the canvas")
    return canvas


@dataclass(frozen=True)
class VertexBand:
    """Restriction of the vertex-count draw to {low..high}."""

    low: int
    high: int


def restrict_vertex_band(low: int, high: int) -> VertexBand:
    """Class filter narrowing sampled vertex counts to a band."""
    lo_all, hi_all = NUM_VERTICES_RANGE
    if not (lo_all <= low <= high <= hi_all):
        raise InvalidParameterError(
            f"vertex band must satisfy {lo_all} <= low <= high <= {hi_all}, got ({low}, {high})"
        )
    return VertexBand(low=low, high=high)


def sample_class_params(class_seed: Seed, vertex_band: VertexBand | None = None) -> RcdbParams:
    """Draw one class uniformly from the parameter ranges.

    Integer fields are uniform over their integer sets, reals over their
    intervals; the vertex band, when given, replaces the vertex-count range.
    """
    rng = class_seed.rng()
    n_lo, n_hi = (vertex_band.low, vertex_band.high) if vertex_band else NUM_VERTICES_RANGE
    return RcdbParams(
        num_polygons=int(rng.integers(NUM_POLYGONS_RANGE[0], NUM_POLYGONS_RANGE[1] + 1)),
        num_vertices=int(rng.integers(n_lo, n_hi + 1)),
        radius=float(rng.uniform(*RADIUS_RANGE)),
        line_width=float(rng.uniform(*LINE_WIDTH_RANGE)),
        resize=(float(rng.uniform(*RESIZE_RANGE)), float(rng.uniform(*RESIZE_RANGE))),
        noise_scale=(float(rng.uniform(*NOISE_SCALE_RANGE)), float(rng.uniform(*NOISE_SCALE_RANGE))),
    )


def corrupt_contours(canvas: Canvas, seed: Seed, line_count: int,
                     stroke_width: float = 2.0) -> Canvas:
    """Erase contours with background-colored random lines (returns a copy).

    The default 2 px width breaks thin contours while leaving the overall
    frame visible; foreground pixel count never increases.
    """
    if line_count < 0:
        raise InvalidParameterError(f"line count must be >= 0, got {line_count}")
    out = canvas.copy()
    if line_count == 0:
        return out
    ends = seed.rng().uniform(0.0, [canvas.width, canvas.height, canvas.width, canvas.height],
                              size=(line_count, 4))
    rasterize_segments(out, ends[:, 0], ends[:, 1], ends[:, 2], ends[:, 3],
                       stroke_width, intensity=canvas.background)
    return out

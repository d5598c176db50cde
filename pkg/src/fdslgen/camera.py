"""Virtual camera poses, sphere sampling, and orthographic framing."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateCloudError, InvalidParameterError
from .raster import Canvas
from .seeds import Seed

_Z_UP = np.array([0.0, 0.0, 1.0])
_Y_UP = np.array([0.0, 1.0, 0.0])


@dataclass(frozen=True)
class CameraPose:
    """A camera on the unit sphere looking at the origin."""

    position: np.ndarray
    up_hint: np.ndarray = field(default_factory=lambda: _Z_UP.copy())

    def __post_init__(self) -> None:
        pos = np.asarray(self.position, dtype=np.float64)
        object.__setattr__(self, "position", pos)
        if pos.shape != (3,) or abs(float(np.linalg.norm(pos)) - 1.0) > 1e-9:
            raise InvalidParameterError("camera position must be a unit 3-vector")

    @classmethod
    def from_direction(cls, direction) -> "CameraPose":
        d = np.asarray(direction, dtype=np.float64)
        norm = float(np.linalg.norm(d))
        if norm == 0 or not np.isfinite(norm):
            raise InvalidParameterError("camera direction must be a nonzero finite vector")
        return cls(position=d / norm)

    def frame(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Orthonormal (right, up, forward); forward points at the origin."""
        forward = -self.position
        right = np.cross(forward, self.up_hint)
        if np.linalg.norm(right) < 1e-8:
            right = np.cross(forward, _Y_UP)
        right = right / np.linalg.norm(right)
        up = np.cross(right, forward)
        return right, up, forward


def sample_unit_sphere(seed: Seed, count: int) -> list[CameraPose]:
    """Uniform poses on the unit sphere (area-preserving z/angle method)."""
    if count < 1:
        raise InvalidParameterError(f"pose count must be >= 1, got {count}")
    rng = seed.rng()
    z = rng.uniform(-1.0, 1.0, size=count)
    theta = rng.uniform(0.0, 2.0 * np.pi, size=count)
    rho = np.sqrt(np.maximum(1.0 - z * z, 0.0))
    positions = np.stack([rho * np.cos(theta), rho * np.sin(theta), z], axis=1)
    positions /= np.linalg.norm(positions, axis=1, keepdims=True)
    return [CameraPose(position=p) for p in positions]


@dataclass(frozen=True)
class Framing:
    """Affine map from cloud coordinates to canvas coordinates."""

    scale: float
    center_x: float
    center_y: float
    canvas_cx: float
    canvas_cy: float

    def apply(self, points: np.ndarray) -> np.ndarray:
        out = np.empty_like(points, dtype=np.float64)
        out[:, 0] = (points[:, 0] - self.center_x) * self.scale + self.canvas_cx
        out[:, 1] = (points[:, 1] - self.center_y) * self.scale + self.canvas_cy
        return out


def compute_framing(points: np.ndarray, width: int, height: int, fit: float) -> Framing:
    """Scale and center a 2D cloud so its bounding square spans `fit` of the canvas.

    Raises DegenerateCloudError when every point coincides (zero extent).
    """
    xmin, ymin = points.min(axis=0)
    xmax, ymax = points.max(axis=0)
    extent = max(xmax - xmin, ymax - ymin)
    if extent <= 0.0:
        raise DegenerateCloudError("point cloud has zero extent and cannot be framed")
    scale = fit * min(width, height) / extent
    return Framing(scale=scale,
                   center_x=(xmin + xmax) * 0.5, center_y=(ymin + ymax) * 0.5,
                   canvas_cx=width * 0.5, canvas_cy=height * 0.5)


def project_orthographic(pose: CameraPose, points, canvas: Canvas, fit: float = 0.9) -> np.ndarray:
    """Project a 3D cloud onto the camera plane, framed to the canvas.

    Returns one (x, y) canvas-coordinate pair per input point.
    """
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[0] == 0 or pts.shape[1] != 3:
        raise InvalidParameterError("expected a nonempty (n, 3) point array")
    right, up, _ = pose.frame()
    uv = np.empty((pts.shape[0], 2))
    uv[:, 0] = pts[:, 0] * right[0] + pts[:, 1] * right[1] + pts[:, 2] * right[2]
    uv[:, 1] = pts[:, 0] * up[0] + pts[:, 1] * up[1] + pts[:, 2] * up[2]
    framing = compute_framing(uv, canvas.width, canvas.height, fit)
    return framing.apply(uv)

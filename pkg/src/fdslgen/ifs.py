"""Iterated function systems: sampling, chaos-game rendering, viewpoints.

A class is one random affine system; instances are small multiplicative
coefficient jitters of it; images are point-splatted chaos-game orbits,
either directly (2D) or projected from a camera on the unit sphere (3D).

System acceptance uses a contractivity window: the probability-weighted
mean of the linear parts' spectral norms must land in a configured band.
This is a documented stand-in for the original category-search procedure;
systems near the top of the band may contain individually expansive maps,
so orbits are bounded on average rather than uniformly.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
from numba import njit

from .camera import CameraPose, compute_framing, project_orthographic, sample_unit_sphere
from .errors import (
    ClassGenerationError,
    DegenerateCloudError,
    DivergentSystemError,
    InvalidParameterError,
)
from .raster import Canvas, splat_points
from .seeds import TAG_CHAOS, TAG_JITTER, TAG_SYSTEM, TAG_VIEWPOINT, Seed, derive_seed, mix64

PROB_FLOOR = 0.01
RESTRICTED_BASE_SEED = 0xBA5E
_GOLDEN_RATIO = (1.0 + np.sqrt(5.0)) / 2.0

# Default acceptance windows for the probability-weighted mean spectral norm.
# Random 3x3 coefficient matrices are larger in norm than 2x2 ones, so the 3D
# band sits higher; it was calibrated so that orbits stay bounded (divergence
# appears above ~1.2) while rejection sampling still accepts ~1% of draws.
CONTRACTION_WINDOW_2D = (0.5, 1.0)
CONTRACTION_WINDOW_3D = (0.6, 1.15)


@dataclass(frozen=True)
class IfsConfig:
    """Knobs for system sampling and rendering."""

    dimension: int = 2
    map_count: int | tuple[int, int] = (2, 8)
    restricted: bool = False
    restricted_base_seed: int = RESTRICTED_BASE_SEED
    prob_floor: float = PROB_FLOOR
    contraction_window: tuple[float, float] | None = None
    max_rejections: int = 1000
    burn_in: int = 20
    point_budget: int = 100_000
    fit: float = 0.9
    jitter_magnitude: float = 0.1

    def map_count_range(self) -> tuple[int, int]:
        if isinstance(self.map_count, int):
            return (self.map_count, self.map_count)
        return self.map_count

    def resolved_window(self) -> tuple[float, float]:
        if self.contraction_window is not None:
            return self.contraction_window
        return CONTRACTION_WINDOW_2D if self.dimension == 2 else CONTRACTION_WINDOW_3D

    def to_dict(self) -> dict:
        lo, hi = self.map_count_range()
        return {
            "dimension": self.dimension,
            "map_count": [lo, hi],
            "restricted": self.restricted,
            "restricted_base_seed": self.restricted_base_seed,
            "prob_floor": self.prob_floor,
            "contraction_window": list(self.resolved_window()),
            "max_rejections": self.max_rejections,
            "burn_in": self.burn_in,
            "point_budget": self.point_budget,
            "fit": self.fit,
            "jitter_magnitude": self.jitter_magnitude,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "IfsConfig":
        return cls(
            dimension=int(d["dimension"]),
            map_count=(int(d["map_count"][0]), int(d["map_count"][1])),
            restricted=bool(d["restricted"]),
            restricted_base_seed=int(d["restricted_base_seed"]),
            prob_floor=float(d["prob_floor"]),
            contraction_window=(float(d["contraction_window"][0]), float(d["contraction_window"][1])),
            max_rejections=int(d["max_rejections"]),
            burn_in=int(d["burn_in"]),
            point_budget=int(d["point_budget"]),
            fit=float(d["fit"]),
            jitter_magnitude=float(d["jitter_magnitude"]),
        )


@dataclass(frozen=True)
class IfsSystem:
    """Affine maps x -> A_i x + t_i with selection probabilities p_i."""

    dimension: int
    linear: np.ndarray        # (k, d, d)
    translation: np.ndarray   # (k, d)
    probabilities: np.ndarray  # (k,)

    def __post_init__(self) -> None:
        d, k = self.dimension, self.map_count
        if d not in (2, 3):
            raise InvalidParameterError(f"dimension must be 2 or 3, got {d}")
        if k == 0:
            raise InvalidParameterError("a system needs at least one map")
        if self.linear.shape != (k, d, d) or self.translation.shape != (k, d):
            raise InvalidParameterError("coefficient array shapes are inconsistent")
        if not (np.all(np.isfinite(self.linear)) and np.all(np.isfinite(self.translation))):
            raise InvalidParameterError("coefficients must be finite")
        if abs(float(self.probabilities.sum()) - 1.0) > 1e-9 or np.any(self.probabilities <= 0):
            raise InvalidParameterError("probabilities must be positive and sum to 1")

    @property
    def map_count(self) -> int:
        return self.probabilities.shape[0]

    def spectral_norms(self) -> np.ndarray:
        return np.array([np.linalg.norm(self.linear[i], 2) for i in range(self.map_count)])

    def contraction_measure(self) -> float:
        """Probability-weighted mean spectral norm of the linear parts."""
        return float(np.dot(self.probabilities, self.spectral_norms()))

    def to_dict(self) -> dict:
        return {
            "dimension": self.dimension,
            "maps": [
                {
                    "linear": self.linear[i].tolist(),
                    "translation": self.translation[i].tolist(),
                    "probability": float(self.probabilities[i]),
                }
                for i in range(self.map_count)
            ],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "IfsSystem":
        maps = d["maps"]
        return cls(
            dimension=int(d["dimension"]),
            linear=np.array([m["linear"] for m in maps], dtype=np.float64),
            translation=np.array([m["translation"] for m in maps], dtype=np.float64),
            probabilities=np.array([m["probability"] for m in maps], dtype=np.float64),
        )


@dataclass(frozen=True)
class PointCloud:
    """Chaos-game orbit samples after burn-in."""

    dimension: int
    points: np.ndarray
    burn_in: int


def _probabilities_from_dets(linear: np.ndarray, prob_floor: float) -> np.ndarray:
    weights = np.maximum(np.abs(np.linalg.det(linear)), prob_floor)
    return weights / weights.sum()


def restricted_base_coeffs(count: int, base_seed: int = RESTRICTED_BASE_SEED) -> np.ndarray:
    """Shared (b_i, d_i, f_i) triples for restricted-mode systems.

    Index i always yields the same triple regardless of how many maps a
    particular system uses, so the fixed coefficients are constant across
    every restricted class.
    """
    out = np.empty((count, 3))
    for i in range(count):
        out[i] = Seed(mix64(base_seed ^ i)).rng().uniform(-1.0, 1.0, size=3)
    return out


def sample_ifs_system(class_seed: Seed, config: IfsConfig = IfsConfig()) -> IfsSystem:
    """Rejection-sample a system whose contraction measure lands in the window.

    Coefficients are uniform in [-1, 1]; probabilities are proportional to
    |det| with a floor.  Restricted mode (2D only) varies only the first
    matrix column and the x-offset, keeping (b, d, f) at the shared base
    values.
    """
    if config.dimension not in (2, 3):
        raise InvalidParameterError(f"dimension must be 2 or 3, got {config.dimension}")
    if config.restricted and config.dimension != 2:
        raise InvalidParameterError("restricted mode applies to 2D systems only")
    lo, hi = config.map_count_range()
    if lo < 1 or lo > hi:
        raise InvalidParameterError(f"bad map count range ({lo}, {hi})")
    win_lo, win_hi = config.resolved_window()
    rng = class_seed.rng()
    base = restricted_base_coeffs(hi, config.restricted_base_seed) if config.restricted else None
    d = config.dimension

    for _ in range(config.max_rejections):
        k = int(rng.integers(lo, hi + 1))
        linear = rng.uniform(-1.0, 1.0, size=(k, d, d))
        translation = rng.uniform(-1.0, 1.0, size=(k, d))
        if base is not None:
            linear[:, 0, 1] = base[:k, 0]
            linear[:, 1, 1] = base[:k, 1]
            translation[:, 1] = base[:k, 2]
        probabilities = _probabilities_from_dets(linear, config.prob_floor)
        system = IfsSystem(dimension=d, linear=linear, translation=translation,
                           probabilities=probabilities)
        if win_lo <= system.contraction_measure() < win_hi:
            return system
    raise ClassGenerationError(
        f"no acceptable system after {config.max_rejections} draws (window {config.resolved_window()})"
    )


def jitter_system(system: IfsSystem, seed: Seed, magnitude: float = 0.1,
                  prob_floor: float = PROB_FLOOR) -> IfsSystem:
    """Intra-class variant: scale every coefficient by (1 + u), u ~ U[-m, m]."""
    rng = seed.rng()
    linear = system.linear * (1.0 + rng.uniform(-magnitude, magnitude, size=system.linear.shape))
    translation = system.translation * (
        1.0 + rng.uniform(-magnitude, magnitude, size=system.translation.shape)
    )
    return IfsSystem(dimension=system.dimension, linear=linear, translation=translation,
                     probabilities=_probabilities_from_dets(linear, prob_floor))


def support_radius_bound(system: IfsSystem) -> float | None:
    """Orbit containment radius max|t| / (1 - s_max), or None when s_max >= 1.

    The bound only exists for uniformly contractive systems; accepted
    systems with an expansive member map have no such radius.
    """
    s_max = float(system.spectral_norms().max())
    if s_max >= 1.0:
        return None
    t_max = float(np.linalg.norm(system.translation, axis=1).max())
    return t_max / (1.0 - s_max)


@njit(cache=True)
def _chaos2d(linear, translation, choices, burn_in, out):
    x = 0.0
    y = 0.0
    for k in range(choices.shape[0]):
        i = choices[k]
        xn = linear[i, 0, 0] * x + linear[i, 0, 1] * y + translation[i, 0]
        yn = linear[i, 1, 0] * x + linear[i, 1, 1] * y + translation[i, 1]
        x = xn
        y = yn
        if k >= burn_in:
            out[k - burn_in, 0] = x
            out[k - burn_in, 1] = y


@njit(cache=True)
def _chaos3d(linear, translation, choices, burn_in, out):
    x = 0.0
    y = 0.0
    z = 0.0
    for k in range(choices.shape[0]):
        i = choices[k]
        xn = linear[i, 0, 0] * x + linear[i, 0, 1] * y + linear[i, 0, 2] * z + translation[i, 0]
        yn = linear[i, 1, 0] * x + linear[i, 1, 1] * y + linear[i, 1, 2] * z + translation[i, 1]
        zn = linear[i, 2, 0] * x + linear[i, 2, 1] * y + linear[i, 2, 2] * z + translation[i, 2]
        x = xn
        y = yn
        z = zn
        if k >= burn_in:
            out[k - burn_in, 0] = x
            out[k - burn_in, 1] = y
            out[k - burn_in, 2] = z


def chaos_game(system: IfsSystem, budget: int, seed: Seed, burn_in: int = 20) -> PointCloud:
    """Iterate x <- w_i(x) from the origin, discarding the first burn_in steps."""
    if budget < 1:
        raise InvalidParameterError(f"point budget must be >= 1, got {budget}")
    rng = seed.rng()
    choices = rng.choice(system.map_count, size=burn_in + budget,
                         p=system.probabilities).astype(np.int64)
    out = np.empty((budget, system.dimension))
    kernel = _chaos2d if system.dimension == 2 else _chaos3d
    kernel(system.linear, system.translation, choices, burn_in, out)
    if not np.all(np.isfinite(out)):
        raise DivergentSystemError(
            "chaos-game iterates diverged; the acceptance window admitted a bad system"
        )
    return PointCloud(dimension=system.dimension, points=out, burn_in=burn_in)


def render_points(cloud: PointCloud, canvas_size: int, point_budget: int,
                  fit: float = 0.9, framing=None) -> Canvas:
    """Splat the first point_budget points of a 2D cloud as single white pixels.

    Framing defaults to the rendered subset's own bounding square; pass a
    precomputed Framing to keep it fixed across budgets.
    """
    if cloud.dimension != 2:
        raise InvalidParameterError("render_points draws 2D clouds; project 3D clouds first")
    if point_budget > cloud.points.shape[0]:
        raise InvalidParameterError(
            f"point budget {point_budget} exceeds cloud size {cloud.points.shape[0]}"
        )
    canvas = Canvas.blank(canvas_size, canvas_size)
    if point_budget == 0:
        return canvas
    pts = cloud.points[:point_budget]
    if framing is None:
        framing = compute_framing(pts, canvas_size, canvas_size, fit)
    return splat_points(canvas, framing.apply(pts))


def icosahedron_vertices() -> np.ndarray:
    """The 12 unit icosahedron vertices in documented cyclic order."""
    phi = _GOLDEN_RATIO
    raw = []
    for a in (1.0, -1.0):
        for b in (phi, -phi):
            raw.extend([[a, b, 0.0], [0.0, a, b], [b, 0.0, a]])
    verts = np.array(raw) / np.sqrt(1.0 + phi * phi)
    return verts


def viewpoints_for_instance(mode: str, count: int, seed: Seed) -> list[CameraPose]:
    """Camera poses for one instance: seeded-random sphere or the fixed grid."""
    if count < 1:
        raise InvalidParameterError(f"viewpoint count must be >= 1, got {count}")
    if mode == "random":
        return sample_unit_sphere(seed, count)
    if mode == "fixed":
        grid = icosahedron_vertices()
        if count > grid.shape[0]:
            raise InvalidParameterError(
                f"fixed viewpoint grid has {grid.shape[0]} poses, requested {count}"
            )
        return [CameraPose(position=grid[i]) for i in range(count)]
    raise InvalidParameterError(f"viewpoint mode must be 'random' or 'fixed', got {mode!r}")


def exfractal_base_system(class_seed: Seed, config: IfsConfig) -> IfsSystem:
    """The class's base 3D system (shared root of every instance variant)."""
    return sample_ifs_system(derive_seed(class_seed.value, 0, 0, TAG_SYSTEM),
                             replace(config, dimension=3))


def iter_exfractal_instance(class_seed: Seed, config: IfsConfig, instance: int,
                            viewpoints: int, point_budget: int, canvas_size: int = 512,
                            viewpoint_mode: str = "random", base: IfsSystem | None = None):
    """Yield (viewpoint, canvas) for one jittered instance of a 3D class."""
    cfg = replace(config, dimension=3)
    if base is None:
        base = exfractal_base_system(class_seed, cfg)
    system = jitter_system(base, derive_seed(class_seed.value, 0, instance, TAG_JITTER),
                           cfg.jitter_magnitude, cfg.prob_floor)
    try:
        cloud = chaos_game(system, point_budget,
                           derive_seed(class_seed.value, 0, instance, TAG_CHAOS),
                           burn_in=cfg.burn_in)
    except DivergentSystemError as exc:
        raise DivergentSystemError(f"instance {instance}: {exc}") from exc
    poses = viewpoints_for_instance(viewpoint_mode, viewpoints,
                                    derive_seed(class_seed.value, 0, instance, TAG_VIEWPOINT))
    for view, pose in enumerate(poses, start=1):
        canvas = Canvas.blank(canvas_size, canvas_size)
        try:
            coords = project_orthographic(pose, cloud.points, canvas, fit=cfg.fit)
        except DegenerateCloudError as exc:
            raise DegenerateCloudError(f"instance {instance} viewpoint {view}: {exc}") from exc
        yield view, splat_points(canvas, coords)


def iter_exfractal_class(class_seed: Seed, config: IfsConfig, instances: int,
                         viewpoints: int, point_budget: int, canvas_size: int = 512,
                         viewpoint_mode: str = "random"):
    """Yield (instance, viewpoint, canvas) for one 3D class, instance-major.

    The base system is sampled once per class; each instance jitters it,
    runs one chaos game, and is photographed from its own pose set.
    """
    if instances < 1 or viewpoints < 1:
        raise InvalidParameterError("instances and viewpoints must be >= 1")
    cfg = replace(config, dimension=3)
    base = exfractal_base_system(class_seed, cfg)
    for inst in range(1, instances + 1):
        for view, canvas in iter_exfractal_instance(class_seed, cfg, inst, viewpoints,
                                                    point_budget, canvas_size,
                                                    viewpoint_mode, base=base):
            yield inst, view, canvas


def generate_exfractal_class(class_seed: Seed, config: IfsConfig, instances: int,
                             viewpoints: int, point_budget: int, canvas_size: int = 512,
                             viewpoint_mode: str = "random") -> list[Canvas]:
    """All instances x viewpoints images of one 3D class, instance-major order."""
    return [canvas for _, _, canvas in
            iter_exfractal_class(class_seed, config, instances, viewpoints,
                                 point_budget, canvas_size, viewpoint_mode)]

"""Dataset builds, verification, and statistics.

A build is a pure function of its spec: every image derives from
(global_seed, class_id, instance_id, stream_tag), so any worker count and
any schedule produce bit-identical files and an identical manifest.  The
manifest is written last, atomically; its presence defines a complete
dataset.  Wall-clock data goes to a separate build log so manifests from
repeat builds stay byte-equal.

Layout: <root>/<class_id>/<instance_id>.png, one directory per class, the
usual image-folder convention.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field, replace
from io import BytesIO
from pathlib import Path

import numpy as np
from PIL import Image

from ._version import __version__
from .errors import (
    BuildError,
    FdslgenError,
    InvalidParameterError,
    ManifestError,
)
from .ifs import IfsConfig, chaos_game, exfractal_base_system, IfsSystem, iter_exfractal_instance, jitter_system, render_points, sample_ifs_system
from .linedb import identity_permutation, sample_label_permutation
from .raster import Canvas
from .rcdb import (
    RcdbParams,
    VertexBand,
    corrupt_contours,
    generate_radial_contour,
    sample_class_params,
)
from .seeds import (
    TAG_CHAOS,
    TAG_CLASS_PARAMS,
    TAG_CORRUPT,
    TAG_IMAGE,
    TAG_JITTER,
    TAG_PERMUTATION,
    Seed,
    derive_seed,
)

log = logging.getLogger("fdslgen")

FAMILIES = ("rcdb", "fractal2d", "exfractal3d", "linedb")
MANIFEST_NAME = "manifest.json"
BUILD_LOG_NAME = "_build_log.json"
STATS_DIRNAME = "_stats"
PARTIAL_MARKER = ".partial"
WORKERS_ENV_VAR = "FDSLGEN_WORKERS"


# --- family configuration blocks ----------------------------------------------

@dataclass(frozen=True)
class RcdbConfig:
    vertex_band: tuple[int, int] | None = None
    corrupt_lines: int = 0
    corrupt_width: float = 2.0
    perlin_frequency: float = 1.0

    def to_dict(self) -> dict:
        return {
            "vertex_band": list(self.vertex_band) if self.vertex_band else None,
            "corrupt_lines": self.corrupt_lines,
            "corrupt_width": self.corrupt_width,
            "perlin_frequency": self.perlin_frequency,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "RcdbConfig":
        band = d.get("vertex_band")
        return cls(
            vertex_band=(int(band[0]), int(band[1])) if band else None,
            corrupt_lines=int(d.get("corrupt_lines", 0)),
            corrupt_width=float(d.get("corrupt_width", 2.0)),
            perlin_frequency=float(d.get("perlin_frequency", 1.0)),
        )


@dataclass(frozen=True)
class ExFractalConfig:
    ifs: IfsConfig = field(default_factory=lambda: IfsConfig(dimension=3))
    instances: int = 25
    viewpoints: int = 40
    viewpoint_mode: str = "random"

    def to_dict(self) -> dict:
        return {
            "ifs": self.ifs.to_dict(),
            "instances": self.instances,
            "viewpoints": self.viewpoints,
            "viewpoint_mode": self.viewpoint_mode,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ExFractalConfig":
        return cls(
            ifs=IfsConfig.from_dict(d["ifs"]),
            instances=int(d["instances"]),
            viewpoints=int(d["viewpoints"]),
            viewpoint_mode=str(d["viewpoint_mode"]),
        )


@dataclass(frozen=True)
class LineDbConfig:
    permute_labels: bool = False
    stroke_width: float = 1.0

    def to_dict(self) -> dict:
        return {"permute_labels": self.permute_labels, "stroke_width": self.stroke_width}

    @classmethod
    def from_dict(cls, d: dict) -> "LineDbConfig":
        return cls(permute_labels=bool(d["permute_labels"]),
                   stroke_width=float(d.get("stroke_width", 1.0)))


def default_family_config(family: str):
    return {
        "rcdb": RcdbConfig(),
        "fractal2d": IfsConfig(dimension=2),
        "exfractal3d": ExFractalConfig(),
        "linedb": LineDbConfig(),
    }[family]


def family_config_from_dict(family: str, d: dict):
    return {
        "rcdb": RcdbConfig.from_dict,
        "fractal2d": IfsConfig.from_dict,
        "exfractal3d": ExFractalConfig.from_dict,
        "linedb": LineDbConfig.from_dict,
    }[family](d)


# --- dataset spec ----------------------------------------------------------------

@dataclass(frozen=True)
class DatasetSpec:
    """Everything a build needs; two equal specs build byte-equal datasets."""

    family: str
    class_count: int
    instances_per_class: int
    global_seed: int
    output_root: Path
    image_size: int = 512
    encoder: str = "png"
    family_config: object | None = None
    fail_fast: bool = False

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise InvalidParameterError(f"unknown family {self.family!r}, expected one of {FAMILIES}")
        if self.class_count < 1 or self.instances_per_class < 1:
            raise InvalidParameterError("class_count and instances_per_class must be >= 1")
        if self.encoder != "png":
            raise InvalidParameterError(f"unsupported encoder {self.encoder!r}")
        if self.image_size < 8:
            raise InvalidParameterError("image size must be >= 8")
        object.__setattr__(self, "output_root", Path(self.output_root))
        if self.family_config is None:
            object.__setattr__(self, "family_config", default_family_config(self.family))
        if self.family == "exfractal3d":
            cfg = self.family_config
            if self.instances_per_class != cfg.instances * cfg.viewpoints:
                raise InvalidParameterError(
                    f"instances_per_class ({self.instances_per_class}) must equal "
                    f"instances x viewpoints ({cfg.instances} x {cfg.viewpoints})"
                )

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "class_count": self.class_count,
            "instances_per_class": self.instances_per_class,
            "global_seed": self.global_seed,
            "image_size": self.image_size,
            "encoder": self.encoder,
            "family_config": self.family_config.to_dict(),
        }


# --- manifest ---------------------------------------------------------------------

@dataclass
class DatasetManifest:
    spec: dict
    classes: list
    errors: list
    label_permutation: list | None = None
    toolkit_version: str = __version__
    format_version: int = 1

    def to_dict(self) -> dict:
        out = {
            "format_version": self.format_version,
            "toolkit": "fdslgen",
            "toolkit_version": self.toolkit_version,
            "spec": self.spec,
            "classes": self.classes,
            "errors": self.errors,
        }
        if self.label_permutation is not None:
            out["label_permutation"] = self.label_permutation
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def write(self, root: Path) -> Path:
        """Atomic write: the manifest appearing marks the dataset complete."""
        path = root / MANIFEST_NAME
        tmp = root / (MANIFEST_NAME + ".tmp")
        tmp.write_text(self.dumps())
        os.replace(tmp, path)
        return path

    @classmethod
    def load(cls, root: Path) -> "DatasetManifest":
        path = Path(root) / MANIFEST_NAME
        if not path.is_file():
            raise ManifestError(f"manifest not found at {path}")
        try:
            raw = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise ManifestError(f"manifest at {path} is not valid JSON: {exc}") from exc
        return cls(
            spec=raw["spec"],
            classes=raw["classes"],
            errors=raw.get("errors", []),
            label_permutation=raw.get("label_permutation"),
            toolkit_version=raw.get("toolkit_version", "unknown"),
            format_version=raw.get("format_version", 1),
        )

    def iter_images(self):
        for cls_rec in self.classes:
            for img in cls_rec["images"]:
                yield cls_rec, img

    def image_count(self) -> int:
        return sum(len(c["images"]) for c in self.classes)


# --- class parameter sampling -------------------------------------------------------

def class_seed_for(spec: DatasetSpec, class_id: int) -> Seed:
    return derive_seed(spec.global_seed, class_id, 0, TAG_CLASS_PARAMS)


def sample_family_class_params(spec: DatasetSpec, class_id: int) -> dict:
    """Serialized class parameters (the formula that defines the label)."""
    seed = class_seed_for(spec, class_id)
    cfg = spec.family_config
    if spec.family == "rcdb":
        band = VertexBand(*cfg.vertex_band) if cfg.vertex_band else None
        return sample_class_params(seed, vertex_band=band).to_dict()
    if spec.family == "fractal2d":
        return sample_ifs_system(seed, cfg).to_dict()
    if spec.family == "exfractal3d":
        return exfractal_base_system(seed, cfg.ifs).to_dict()
    if spec.family == "linedb":
        return {"line_count": class_id}
    raise InvalidParameterError(spec.family)


def linedb_permutation(spec: DatasetSpec) -> list[int]:
    if spec.family_config.permute_labels:
        return sample_label_permutation(spec.class_count,
                                        derive_seed(spec.global_seed, 0, 0, TAG_PERMUTATION))
    return identity_permutation(spec.class_count)


# --- image generation (worker side) ---------------------------------------------------

def _encode_png(canvas: Canvas) -> bytes:
    buf = BytesIO()
    Image.fromarray(canvas.pixels, mode="L").save(buf, format="PNG")
    return buf.getvalue()


def _write_image(root: Path, rel: str, data: bytes) -> None:
    path = root / rel
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(data)


def _record(rel: str, instance: int, seed: Seed, data: bytes, **extra) -> dict:
    rec = {"instance": instance, "path": rel, "seed": seed.value,
           "sha256": hashlib.sha256(data).hexdigest()}
    rec.update(extra)
    return rec


def _generate_unit(spec: DatasetSpec, class_id: int, sub: int | None) -> list[dict]:
    """Generate and write one work unit's images; returns manifest records.

    A unit is a whole class, except for exfractal3d where it is one 3D
    instance (sub) so big classes parallelize across workers.
    """
    cfg = spec.family_config
    g = spec.global_seed
    size = spec.image_size
    records = []

    if spec.family == "rcdb":
        band = VertexBand(*cfg.vertex_band) if cfg.vertex_band else None
        params = sample_class_params(class_seed_for(spec, class_id), vertex_band=band)
        for inst in range(1, spec.instances_per_class + 1):
            seed = derive_seed(g, class_id, inst, TAG_IMAGE)
            canvas = generate_radial_contour(params, seed, size, cfg.perlin_frequency)
            if cfg.corrupt_lines > 0:
                canvas = corrupt_contours(canvas, derive_seed(g, class_id, inst, TAG_CORRUPT),
                                          cfg.corrupt_lines, cfg.corrupt_width)
            rel = f"{class_id:05d}/{inst:05d}.png"
            data = _encode_png(canvas)
            _write_image(spec.output_root, rel, data)
            records.append(_record(rel, inst, seed, data))

    elif spec.family == "fractal2d":
        system = sample_ifs_system(class_seed_for(spec, class_id), cfg)
        for inst in range(1, spec.instances_per_class + 1):
            variant = jitter_system(system, derive_seed(g, class_id, inst, TAG_JITTER),
                                    cfg.jitter_magnitude, cfg.prob_floor)
            seed = derive_seed(g, class_id, inst, TAG_CHAOS)
            cloud = chaos_game(variant, cfg.point_budget, seed, burn_in=cfg.burn_in)
            canvas = render_points(cloud, size, cfg.point_budget, fit=cfg.fit)
            rel = f"{class_id:05d}/{inst:05d}.png"
            data = _encode_png(canvas)
            _write_image(spec.output_root, rel, data)
            records.append(_record(rel, inst, seed, data))

    elif spec.family == "exfractal3d":
        class_seed = class_seed_for(spec, class_id)
        for view, canvas in iter_exfractal_instance(
            class_seed, cfg.ifs, sub, cfg.viewpoints, cfg.ifs.point_budget,
            size, cfg.viewpoint_mode,
        ):
            idx = (sub - 1) * cfg.viewpoints + view
            rel = f"{class_id:05d}/{idx:05d}.png"
            data = _encode_png(canvas)
            _write_image(spec.output_root, rel, data)
            records.append(_record(rel, idx, derive_seed(g, class_id, sub, TAG_CHAOS), data,
                                   ifs_instance=sub, viewpoint=view))

    elif spec.family == "linedb":
        # class_id is the category (= line count); the directory carries the label.
        from .linedb import generate_line_image

        label = linedb_permutation(spec)[class_id - 1]
        for inst in range(1, spec.instances_per_class + 1):
            seed = derive_seed(g, class_id, inst, TAG_IMAGE)
            canvas = generate_line_image(class_id, seed, size, cfg.stroke_width)
            rel = f"{label:05d}/{inst:05d}.png"
            data = _encode_png(canvas)
            _write_image(spec.output_root, rel, data)
            records.append(_record(rel, inst, seed, data, line_count=class_id))

    return records


def _run_unit(spec: DatasetSpec, class_id: int, sub: int | None):
    """Pool entry point: returns (class_id, records) or (class_id, error_dict)."""
    try:
        return class_id, _generate_unit(spec, class_id, sub), None
    except FdslgenError as exc:
        err = {"class_id": class_id, "error": f"{type(exc).__name__}: {exc}"}
        if sub is not None:
            err["instance"] = sub
        return class_id, [], err


# --- build ------------------------------------------------------------------------------

def resolve_workers(parallelism: int | None) -> int:
    if parallelism is not None:
        return max(1, parallelism)
    env = os.environ.get(WORKERS_ENV_VAR)
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def build_dataset(spec: DatasetSpec, parallelism: int | None = None) -> DatasetManifest:
    """Build every class, write images and the manifest, report throughput.

    Per-class generation failures are recorded in the manifest's error
    section (or raised when spec.fail_fast); I/O failures abort the build
    and leave a `.partial` marker.
    """
    workers = resolve_workers(parallelism)
    root = spec.output_root
    root.mkdir(parents=True, exist_ok=True)
    marker = root / PARTIAL_MARKER
    marker.unlink(missing_ok=True)

    permutation = linedb_permutation(spec) if spec.family == "linedb" else None

    # Class parameter records; sampling failures are per-class errors.
    class_params: dict[int, dict] = {}
    errors: list[dict] = []
    for class_id in range(1, spec.class_count + 1):
        try:
            class_params[class_id] = sample_family_class_params(spec, class_id)
        except FdslgenError as exc:
            if spec.fail_fast:
                raise BuildError(f"class {class_id} failed: {exc}") from exc
            errors.append({"class_id": class_id, "error": f"{type(exc).__name__}: {exc}"})

    if spec.family == "exfractal3d":
        units = [(c, i) for c in class_params
                 for i in range(1, spec.family_config.instances + 1)]
    else:
        units = [(c, None) for c in class_params]

    images_by_class: dict[int, list[dict]] = {c: [] for c in class_params}
    failed_classes: set[int] = set()
    started = time.monotonic()
    done_images = 0
    last_log = started

    def consume(result):
        nonlocal done_images, last_log
        class_id, records, err = result
        if err is not None:
            if spec.fail_fast:
                raise BuildError(f"class {class_id} failed: {err['error']}")
            errors.append(err)
            failed_classes.add(class_id)
            return
        images_by_class[class_id].extend(records)
        done_images += len(records)
        now = time.monotonic()
        if now - last_log > 5.0:
            rate = done_images / (now - started)
            log.info("generated %d images (%.1f images/sec)", done_images, rate)
            last_log = now

    try:
        if workers == 1:
            for class_id, sub in units:
                consume(_run_unit(spec, class_id, sub))
        else:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                futures = [pool.submit(_run_unit, spec, c, s) for c, s in units]
                for future in as_completed(futures):
                    consume(future.result())
    except BuildError:
        marker.touch()
        raise
    except OSError as exc:
        marker.touch()
        raise BuildError(f"build aborted by I/O failure: {exc}") from exc

    elapsed = max(time.monotonic() - started, 1e-9)

    # Classes whose generation failed partway contribute no manifest entries;
    # remove any files they already wrote so disk and manifest agree.
    for class_id in failed_classes:
        for rec in images_by_class.pop(class_id, []):
            (root / rec["path"]).unlink(missing_ok=True)
        class_dir = root / f"{class_id:05d}"
        if class_dir.is_dir() and not any(class_dir.iterdir()):
            class_dir.rmdir()

    classes = []
    for class_id in sorted(images_by_class):
        records = sorted(images_by_class[class_id], key=lambda r: r["instance"])
        entry = {"class_id": class_id, "params": class_params[class_id], "images": records}
        if spec.family == "linedb":
            entry["class_id"] = permutation[class_id - 1]
            entry["params"] = {"line_count": class_id, "label": permutation[class_id - 1]}
        classes.append(entry)
    classes.sort(key=lambda c: c["class_id"])
    errors.sort(key=lambda e: (e["class_id"], e.get("instance", 0)))

    manifest = DatasetManifest(
        spec=spec.to_dict(),
        classes=classes,
        errors=errors,
        label_permutation=permutation,
    )
    manifest.write(root)

    total = manifest.image_count()
    rate = total / elapsed
    log.info("built %d images in %.1fs (%.1f images/sec, %d workers)", total, elapsed, rate, workers)
    (root / BUILD_LOG_NAME).write_text(json.dumps({
        "images": total,
        "elapsed_sec": round(elapsed, 3),
        "images_per_sec": round(rate, 3),
        "workers": workers,
    }, indent=2))
    return manifest


# --- verification -------------------------------------------------------------------------

@dataclass
class VerificationReport:
    root: str
    total_images: int = 0
    class_counts: dict = field(default_factory=dict)
    checksum_failures: list = field(default_factory=list)
    missing_files: list = field(default_factory=list)
    orphan_files: list = field(default_factory=list)
    param_violations: list = field(default_factory=list)
    partial_build: bool = False
    generation_errors: int = 0

    @property
    def ok(self) -> bool:
        return not (self.checksum_failures or self.missing_files or self.orphan_files
                    or self.param_violations or self.partial_build)

    def to_dict(self) -> dict:
        return {
            "root": self.root,
            "ok": self.ok,
            "total_images": self.total_images,
            "class_counts": {str(k): v for k, v in sorted(self.class_counts.items())},
            "checksum_failures": self.checksum_failures,
            "missing_files": self.missing_files,
            "orphan_files": self.orphan_files,
            "param_violations": self.param_violations,
            "partial_build": self.partial_build,
            "generation_errors": self.generation_errors,
        }

    def summary(self) -> str:
        if self.ok:
            return (f"OK: {self.total_images} images in {len(self.class_counts)} classes, "
                    f"checksums verified, no orphans")
        parts = []
        if self.partial_build:
            parts.append("partial build marker present")
        for name, items in (("checksum failures", self.checksum_failures),
                            ("missing files", self.missing_files),
                            ("orphan files", self.orphan_files),
                            ("parameter violations", self.param_violations)):
            if items:
                shown = ", ".join(items[:5]) + ("..." if len(items) > 5 else "")
                parts.append(f"{len(items)} {name}: {shown}")
        return "FAIL: " + "; ".join(parts)


def _validate_class_params(manifest: DatasetManifest, report: VerificationReport) -> None:
    family = manifest.spec["family"]
    for cls_rec in manifest.classes:
        cid = cls_rec["class_id"]
        try:
            if family == "rcdb":
                RcdbParams.from_dict(cls_rec["params"])
            elif family in ("fractal2d", "exfractal3d"):
                IfsSystem.from_dict(cls_rec["params"])
            elif family == "linedb":
                if cls_rec["params"]["line_count"] < 0:
                    raise InvalidParameterError("negative line count")
        except (FdslgenError, KeyError, TypeError, ValueError) as exc:
            report.param_violations.append(f"class {cid}: {exc}")
    if family == "linedb":
        perm = manifest.label_permutation or []
        if sorted(perm) != list(range(1, manifest.spec["class_count"] + 1)):
            report.param_violations.append("label permutation is not a bijection on 1..C")


def verify_dataset(root) -> VerificationReport:
    """Recompute checksums, re-validate parameters, and find orphans."""
    root = Path(root)
    manifest = DatasetManifest.load(root)
    report = VerificationReport(root=str(root))
    report.generation_errors = len(manifest.errors)
    report.partial_build = (root / PARTIAL_MARKER).exists()

    listed = set()
    for cls_rec, img in manifest.iter_images():
        cid = cls_rec["class_id"]
        rel = img["path"]
        listed.add(rel)
        report.class_counts[cid] = report.class_counts.get(cid, 0) + 1
        report.total_images += 1
        path = root / rel
        if not path.is_file():
            report.missing_files.append(rel)
            continue
        digest = hashlib.sha256(path.read_bytes()).hexdigest()
        if digest != img["sha256"]:
            report.checksum_failures.append(rel)

    ignored = {MANIFEST_NAME, BUILD_LOG_NAME, PARTIAL_MARKER}
    for path in root.rglob("*"):
        if not path.is_file():
            continue
        rel = path.relative_to(root).as_posix()
        top = rel.split("/", 1)[0]
        if top in ignored or top == STATS_DIRNAME or top.startswith("."):
            continue
        if rel not in listed:
            report.orphan_files.append(rel)

    _validate_class_params(DatasetManifest(manifest.spec, manifest.classes, manifest.errors,
                                           manifest.label_permutation), report)
    report.checksum_failures.sort()
    report.missing_files.sort()
    report.orphan_files.sort()
    return report


# --- statistics ------------------------------------------------------------------------------

@dataclass
class DatasetStats:
    root: str
    family: str
    image_count: int
    class_count: int
    mean_foreground_ratio: float
    mean_foreground_pixels: float
    histogram_counts: list
    histogram_edges: list
    per_class: list
    point_budget: int | None = None
    images_per_sec: float | None = None

    def to_dict(self) -> dict:
        return {
            "root": self.root,
            "family": self.family,
            "image_count": self.image_count,
            "class_count": self.class_count,
            "mean_foreground_ratio": self.mean_foreground_ratio,
            "mean_foreground_pixels": self.mean_foreground_pixels,
            "histogram_counts": self.histogram_counts,
            "histogram_edges": self.histogram_edges,
            "per_class": self.per_class,
            "point_budget": self.point_budget,
            "images_per_sec": self.images_per_sec,
        }

    def summary(self) -> str:
        lines = [
            f"{self.family} dataset: {self.image_count} images, {self.class_count} classes",
            f"mean foreground ratio {self.mean_foreground_ratio:.4f} "
            f"({self.mean_foreground_pixels:.0f} px/image)",
        ]
        if self.point_budget is not None:
            lines.append(f"point budget {self.point_budget}")
        if self.images_per_sec is not None:
            lines.append(f"build throughput {self.images_per_sec:.1f} images/sec")
        return "\n".join(lines)


def stats_report(root, make_plots: bool = True, histogram_bins: int = 32) -> DatasetStats:
    """Foreground-pixel statistics per class and globally.

    Always writes the per-class table as CSV under <root>/_stats/; figures
    are rendered there too unless make_plots is off.  Deterministic for a
    fixed dataset.
    """
    root = Path(root)
    manifest = DatasetManifest.load(root)
    family = manifest.spec["family"]

    ratios = []
    per_class_px: dict[int, list[float]] = {}
    for cls_rec in manifest.classes:
        cid = cls_rec["class_id"]
        per_class_px[cid] = []
        for img in cls_rec["images"]:
            pixels = np.asarray(Image.open(root / img["path"]))
            fg = int(np.count_nonzero(pixels))
            per_class_px[cid].append(fg)
            ratios.append(fg / pixels.size)
    ratios = np.array(ratios) if ratios else np.zeros(0)
    image_area = manifest.spec["image_size"] ** 2

    counts, edges = np.histogram(ratios, bins=histogram_bins, range=(0.0, 1.0))
    per_class = [
        {
            "class_id": cid,
            "images": len(px),
            "mean_foreground_pixels": float(np.mean(px)) if px else 0.0,
            "mean_foreground_ratio": float(np.mean(px) / image_area) if px else 0.0,
        }
        for cid, px in sorted(per_class_px.items())
    ]

    point_budget = None
    if family == "fractal2d":
        point_budget = manifest.spec["family_config"]["point_budget"]
    elif family == "exfractal3d":
        point_budget = manifest.spec["family_config"]["ifs"]["point_budget"]

    images_per_sec = None
    build_log = root / BUILD_LOG_NAME
    if build_log.is_file():
        images_per_sec = json.loads(build_log.read_text()).get("images_per_sec")

    stats = DatasetStats(
        root=str(root),
        family=family,
        image_count=int(ratios.size),
        class_count=len(manifest.classes),
        mean_foreground_ratio=float(ratios.mean()) if ratios.size else 0.0,
        mean_foreground_pixels=float(ratios.mean() * image_area) if ratios.size else 0.0,
        histogram_counts=[int(c) for c in counts],
        histogram_edges=[float(e) for e in edges],
        per_class=per_class,
        point_budget=point_budget,
        images_per_sec=images_per_sec,
    )

    out_dir = root / STATS_DIRNAME
    out_dir.mkdir(exist_ok=True)
    _write_per_class_csv(stats, out_dir / "per_class.csv")
    if make_plots:
        from .plots import save_stats_figures

        save_stats_figures(stats, out_dir)
    return stats


def _write_per_class_csv(stats: DatasetStats, path: Path) -> None:
    import csv

    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=["class_id", "images",
                                                "mean_foreground_pixels",
                                                "mean_foreground_ratio"])
        writer.writeheader()
        for row in stats.per_class:
            writer.writerow(row)

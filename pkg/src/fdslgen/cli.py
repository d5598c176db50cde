"""Command-line interface: build / verify / stats.

Exit status: 0 success, 1 verification failure, 2 build or usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .errors import FdslgenError
from .ifs import IfsConfig
from .pipeline import (
    WORKERS_ENV_VAR,
    DatasetSpec,
    ExFractalConfig,
    LineDbConfig,
    RcdbConfig,
    build_dataset,
    stats_report,
    verify_dataset,
)


def _parse_range(text: str, name: str) -> tuple[int, int]:
    try:
        lo, hi = text.split(":")
        return int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{name} must look like LO:HI, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fdslgen",
        description="Generate labeled image datasets from mathematical formulas.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="build a dataset")
    b.add_argument("--family", required=True, choices=["rcdb", "fractal2d", "exfractal3d", "linedb"])
    b.add_argument("--classes", type=int, required=True, metavar="C")
    b.add_argument("--instances", type=int, required=True, metavar="K",
                   help="images per class; for exfractal3d: 3D instances per class "
                        "(images per class = instances x viewpoints)")
    b.add_argument("--seed", type=int, required=True, metavar="S")
    b.add_argument("--out", required=True, metavar="DIR")
    b.add_argument("--image-size", type=int, default=512)
    b.add_argument("--point-budget", type=int, default=100_000)
    b.add_argument("--viewpoint-mode", choices=["random", "fixed"], default="random")
    b.add_argument("--viewpoints", type=int, default=40,
                   help="camera poses per 3D instance (exfractal3d only)")
    b.add_argument("--restricted", action="store_true",
                   help="fractal2d: vary only (a, c, e), pin (b, d, f) to base values")
    b.add_argument("--vertex-band", type=str, default=None, metavar="LO:HI",
                   help="rcdb: restrict vertex counts to a band")
    b.add_argument("--corrupt-lines", type=int, default=0, metavar="N",
                   help="rcdb: erase contours with N background-colored lines")
    b.add_argument("--corrupt-width", type=float, default=2.0)
    b.add_argument("--map-count", type=str, default="2:8", metavar="LO:HI",
                   help="IFS maps per system (fixed when LO == HI)")
    b.add_argument("--permute-labels", action="store_true",
                   help="linedb: relabel categories through a recorded bijection")
    b.add_argument("--workers", type=int, default=None, metavar="W",
                   help=f"worker processes (default: ${WORKERS_ENV_VAR} or CPU count)")
    b.add_argument("--fail-fast", action="store_true")

    v = sub.add_parser("verify", help="re-check checksums, parameters, and layout")
    v.add_argument("dir")
    v.add_argument("--json", action="store_true")

    s = sub.add_parser("stats", help="foreground statistics, CSV, and figures")
    s.add_argument("dir")
    s.add_argument("--json", action="store_true")
    s.add_argument("--no-plots", action="store_true")
    return parser


def _family_config(args):
    if args.family == "rcdb":
        band = _parse_range(args.vertex_band, "--vertex-band") if args.vertex_band else None
        return RcdbConfig(vertex_band=band, corrupt_lines=args.corrupt_lines,
                          corrupt_width=args.corrupt_width)
    map_count = _parse_range(args.map_count, "--map-count")
    if args.family == "fractal2d":
        return IfsConfig(dimension=2, map_count=map_count, restricted=args.restricted,
                         point_budget=args.point_budget)
    if args.family == "exfractal3d":
        return ExFractalConfig(
            ifs=IfsConfig(dimension=3, map_count=map_count, point_budget=args.point_budget),
            instances=args.instances,
            viewpoints=args.viewpoints,
            viewpoint_mode=args.viewpoint_mode,
        )
    return LineDbConfig(permute_labels=args.permute_labels)


def _cmd_build(args) -> int:
    instances_per_class = args.instances
    if args.family == "exfractal3d":
        instances_per_class = args.instances * args.viewpoints
    spec = DatasetSpec(
        family=args.family,
        class_count=args.classes,
        instances_per_class=instances_per_class,
        global_seed=args.seed,
        output_root=args.out,
        image_size=args.image_size,
        family_config=_family_config(args),
        fail_fast=args.fail_fast,
    )
    manifest = build_dataset(spec, parallelism=args.workers)
    print(f"built {manifest.image_count()} images in {len(manifest.classes)} classes "
          f"at {args.out}")
    if manifest.errors:
        print(f"{len(manifest.errors)} class generation errors recorded in the manifest",
              file=sys.stderr)
    return 0


def _cmd_verify(args) -> int:
    report = verify_dataset(args.dir)
    if args.json:
        print(json.dumps(report.to_dict(), indent=2))
    else:
        print(report.summary())
    return 0 if report.ok else 1


def _cmd_stats(args) -> int:
    stats = stats_report(args.dir, make_plots=not args.no_plots)
    if args.json:
        print(json.dumps(stats.to_dict(), indent=2))
    else:
        print(stats.summary())
    return 0


def main(argv=None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")
    args = build_parser().parse_args(argv)
    try:
        if args.command == "build":
            return _cmd_build(args)
        if args.command == "verify":
            return _cmd_verify(args)
        return _cmd_stats(args)
    except FdslgenError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

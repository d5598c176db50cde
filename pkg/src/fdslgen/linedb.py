"""Counted-lines dataset: category k holds images with exactly k random lines.

The label is generative — it counts the segments drawn, not a property
recoverable from the pixels (overlaps can merge strokes).  An optional
recorded bijection permutes the category -> label mapping for the
label-consistency control; image bytes depend only on the line count and
seed, so identity-permuted builds differ from plain ones only in the
manifest.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError
from .raster import Canvas, rasterize_segments
from .seeds import Seed

# Category counts used by the published sweep; other values are allowed for
# toy-scale runs.
CANONICAL_CATEGORY_COUNTS = (16, 32, 64, 128, 256, 512, 1000)


@dataclass(frozen=True)
class LineDbSpec:
    """Build parameters for one counted-lines dataset."""

    category_count: int
    images_per_category: int
    permute_labels: bool = False
    stroke_width: float = 1.0

    def __post_init__(self) -> None:
        if self.category_count < 1:
            raise InvalidParameterError("category_count must be >= 1")
        if self.images_per_category < 1:
            raise InvalidParameterError("images_per_category must be >= 1")
        if self.stroke_width <= 0:
            raise InvalidParameterError("stroke width must be positive")


def generate_line_image(line_count: int, seed: Seed, canvas_size: int = 512,
                        stroke_width: float = 1.0) -> Canvas:
    """Draw line_count white segments with uniform random endpoints."""
    if line_count < 0:
        raise InvalidParameterError(f"line count must be >= 0, got {line_count}")
    canvas = Canvas.blank(canvas_size, canvas_size)
    if line_count == 0:
        return canvas
    ends = seed.rng().uniform(0.0, canvas_size, size=(line_count, 4))
    rasterize_segments(canvas, ends[:, 0], ends[:, 1], ends[:, 2], ends[:, 3], stroke_width)
    return canvas


def sample_label_permutation(category_count: int, seed: Seed) -> list[int]:
    """A recorded bijection pi on {1..C}; pi[k-1] is the label of category k."""
    return [int(v) + 1 for v in seed.rng().permutation(category_count)]


def identity_permutation(category_count: int) -> list[int]:
    return list(range(1, category_count + 1))


def build_linedb(spec: LineDbSpec, global_seed: Seed, output_root, image_size: int = 512,
                 workers: int = 1):
    """Build a counted-lines dataset on disk; returns the manifest.

    Thin front end over the pipeline builder so the permutation, seeds, and
    checksums land in the standard manifest format.
    """
    from .pipeline import DatasetSpec, LineDbConfig, build_dataset

    dataset = DatasetSpec(
        family="linedb",
        class_count=spec.category_count,
        instances_per_class=spec.images_per_category,
        global_seed=global_seed.value,
        output_root=output_root,
        image_size=image_size,
        family_config=LineDbConfig(permute_labels=spec.permute_labels,
                                   stroke_width=spec.stroke_width),
    )
    return build_dataset(dataset, parallelism=workers)

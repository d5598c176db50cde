"""Deterministic seed derivation.

Every image in a dataset is a pure function of
(global_seed, class_id, instance_id, stream_tag).  The derivation is a
SplitMix64-style avalanche mix over the four ids, so it is platform- and
schedule-independent: workers may generate classes in any order on any
number of threads and still produce bit-identical output.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB

# Stream tags keep independent random streams (noise, centers, poses, ...)
# derived from one seed from colliding.
TAG_CLASS_PARAMS = 1
TAG_IMAGE = 2
TAG_NOISE = 3
TAG_CENTER = 4
TAG_VIEWPOINT = 5
TAG_JITTER = 6
TAG_CORRUPT = 7
TAG_LINES = 8
TAG_PERMUTATION = 9
TAG_SYSTEM = 10
TAG_CHAOS = 11


@dataclass(frozen=True)
class Seed:
    """A 64-bit unsigned seed value."""

    value: int

    def __post_init__(self) -> None:
        if not 0 <= self.value <= _MASK:
            raise ValueError(f"seed value out of 64-bit range: {self.value}")

    def rng(self) -> np.random.Generator:
        """A fresh PCG64 generator keyed by this seed."""
        return np.random.Generator(np.random.PCG64(self.value))


def mix64(x: int) -> int:
    """One SplitMix64 step: add the golden gamma, then avalanche."""
    x = (x + _GOLDEN) & _MASK
    x ^= x >> 30
    x = (x * _MIX1) & _MASK
    x ^= x >> 27
    x = (x * _MIX2) & _MASK
    x ^= x >> 31
    return x


def mix64_array(x: np.ndarray) -> np.ndarray:
    """Vectorised :func:`mix64` over a uint64 array (wrapping arithmetic)."""
    x = x.astype(np.uint64, copy=True)
    x += np.uint64(_GOLDEN)
    x ^= x >> np.uint64(30)
    x *= np.uint64(_MIX1)
    x ^= x >> np.uint64(27)
    x *= np.uint64(_MIX2)
    x ^= x >> np.uint64(31)
    return x


def derive_seed(global_seed: int, class_id: int, instance_id: int, stream_tag: int) -> Seed:
    """Derive the seed for one (class, instance, stream) work item.

    Pure and order-independent: the same ids give the same seed on any
    platform, process, or thread schedule.
    """
    h = mix64(global_seed & _MASK)
    h = mix64(h ^ (class_id & _MASK))
    h = mix64(h ^ (instance_id & _MASK))
    h = mix64(h ^ (stream_tag & _MASK))
    return Seed(h)


def derive_seed_array(global_seed: int, class_ids: np.ndarray, instance_id: int,
                      stream_tag: int) -> np.ndarray:
    """Vectorised derive_seed over many class ids (same values, uint64 array)."""
    h = np.full(len(class_ids), mix64(global_seed & _MASK), dtype=np.uint64)
    h = mix64_array(h ^ class_ids.astype(np.uint64))
    h = mix64_array(h ^ np.uint64(instance_id))
    h = mix64_array(h ^ np.uint64(stream_tag))
    return h

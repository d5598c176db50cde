"""Classic 1D gradient-lattice Perlin noise.

A pseudo-random scalar gradient lives at every integer lattice coordinate.
The value at coordinate t is the smootherstep blend of the two neighbouring
gradient ramps, so it is exactly zero at every lattice point and C1-smooth
in between.  Gradients are hashed directly from (seed, lattice index) with
the same 64-bit mixer used for seed derivation, so there is no permutation
table and no period.

Sequence sampling offsets coordinates by half a step: with the default
frequency of 1.0 a naive sampler would land on the lattice and return all
zeros.
"""

from __future__ import annotations

import numpy as np

from .errors import EmptyRequestError, InvalidParameterError
from .seeds import Seed, mix64, mix64_array

_INV_2_53 = 1.0 / (1 << 53)


def _gradients(seed: Seed, idx: np.ndarray) -> np.ndarray:
    """Hash lattice indices to gradients in [-1, 1)."""
    h = mix64_array(idx.astype(np.int64).astype(np.uint64))
    h = mix64_array(h ^ np.uint64(seed.value))
    return ((h >> np.uint64(11)) * _INV_2_53) * 2.0 - 1.0


def perlin1d_at(seed: Seed, coords) -> np.ndarray:
    """Evaluate the noise field at arbitrary real coordinates."""
    c = np.asarray(coords, dtype=np.float64)
    if not np.all(np.isfinite(c)):
        raise InvalidParameterError("perlin coordinates must be finite")
    i0 = np.floor(c).astype(np.int64)
    u = c - i0
    g0 = _gradients(seed, i0)
    g1 = _gradients(seed, i0 + 1)
    # smootherstep 6u^5 - 15u^4 + 10u^3
    w = u * u * u * (u * (u * 6.0 - 15.0) + 10.0)
    a = g0 * u
    b = g1 * (u - 1.0)
    return a + w * (b - a)


def perlin1d_matrix(seed_values: np.ndarray, length: int, frequency: float = 1.0) -> np.ndarray:
    """Single-octave sequences for many seeds at once.

    Row j equals perlin1d(Seed(seed_values[j]), length, frequency); batching
    the gradient hashing matters when a generator needs hundreds of short
    sequences per image.
    """
    if length < 1:
        raise EmptyRequestError("requested an empty noise sequence")
    if frequency <= 0:
        raise InvalidParameterError(f"frequency must be positive, got {frequency}")
    coords = (np.arange(1, length + 1, dtype=np.float64) - 0.5) * frequency
    i0 = np.floor(coords).astype(np.int64)
    u = coords - i0
    seeds = np.asarray(seed_values, dtype=np.uint64)[:, None]

    def grads(idx):
        # same two-stage hash as _gradients, broadcast over (seed, lattice)
        h = mix64_array(idx.astype(np.uint64))[None, :]
        h = mix64_array(h ^ seeds)
        return ((h >> np.uint64(11)) * _INV_2_53) * 2.0 - 1.0

    g0 = grads(i0)
    g1 = grads(i0 + 1)
    w = u * u * u * (u * (u * 6.0 - 15.0) + 10.0)
    a = g0 * u
    b = g1 * (u - 1.0)
    return a + w * (b - a)


def perlin1d(
    seed: Seed,
    length: int,
    frequency: float = 1.0,
    octaves: int = 1,
    persistence: float = 0.5,
    amplitude: float = 1.0,
) -> np.ndarray:
    """Sample a noise sequence of `length` values.

    Sample k (1-based) is taken at coordinate (k - 0.5) * frequency, where
    frequency is in lattice cells per index.  Multi-octave output is the
    usual lacunarity-2 sum normalised by total persistence weight, which
    keeps values in [-1, 1] for any settings.
    """
    if length < 1:
        raise EmptyRequestError("requested an empty noise sequence")
    if frequency <= 0:
        raise InvalidParameterError(f"frequency must be positive, got {frequency}")
    if octaves < 1:
        raise InvalidParameterError(f"octaves must be >= 1, got {octaves}")

    coords = (np.arange(1, length + 1, dtype=np.float64) - 0.5) * frequency
    total = np.zeros(length)
    norm = 0.0
    for o in range(octaves):
        octave_seed = seed if o == 0 else Seed(mix64(seed.value ^ o))
        weight = persistence**o
        total += weight * perlin1d_at(octave_seed, coords * (1 << o))
        norm += weight
    return amplitude * total / norm

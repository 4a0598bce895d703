"""Seeded random streams.

Every random draw comes from a PCG64 generator keyed by
``SeedSequence(seed, spawn_key=(stream, *ids))``. Streams for different
purposes (features, noise, shuffles, folds, init) never overlap, and a
stream depends only on its key, so parallel and serial runs agree.

Normal variates use the Box-Muller transform of two uniform draws rather
than numpy's ziggurat so the mapping from uniforms is explicit.
"""

from __future__ import annotations

import enum

import numpy as np

_MASK64 = (1 << 64) - 1


class Stream(enum.IntEnum):
    FEATURES = 0
    NOISE = 1
    SHUFFLE = 2
    FOLDS = 3
    INIT = 4
    SPLIT = 5
    SAMPLE = 6


def make_rng(seed: int, stream: Stream, *ids: int) -> np.random.Generator:
    key = (int(stream),) + tuple(int(i) & _MASK64 for i in ids)
    ss = np.random.SeedSequence(int(seed) & _MASK64, spawn_key=key)
    return np.random.Generator(np.random.PCG64(ss))


def derive_seed(seed: int, *ids: int) -> int:
    """A child 64-bit seed, stable for a given ``(seed, *ids)``."""
    ss = np.random.SeedSequence(int(seed) & _MASK64, spawn_key=tuple(int(i) & _MASK64 for i in ids))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def standard_normal(rng: np.random.Generator, size: int) -> np.ndarray:
    """Box-Muller: ``sqrt(-2 ln u1) * cos(2 pi u2)`` with ``u1`` in (0, 1]."""
    # pairs are drawn interleaved so a shorter sample is a prefix of a longer one
    u = rng.random((size, 2))
    u1, u2 = 1.0 - u[:, 0], u[:, 1]
    return np.sqrt(-2.0 * np.log(u1)) * np.cos(2.0 * np.pi * u2)

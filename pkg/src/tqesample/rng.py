"""Derived random streams.

Every random quantity in the package comes from a PCG64 generator seeded
through a ``SeedSequence`` spawn key, so each draw is a pure function of the
user seed plus an addressing key and never depends on execution order.
Distinct domain tags keep category, sample and PED streams from colliding.
"""

from __future__ import annotations

import numpy as np

GENERATOR_NAME = "PCG64"

MAX_SEED = 2**64

_DOMAIN_CATEGORY = 0
_DOMAIN_SAMPLE = 1
_DOMAIN_PED = 2


def check_seed(seed: int) -> int:
    if not 0 <= seed < MAX_SEED:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return int(seed)


def category_rng(seed: int, category_index: int) -> np.random.Generator:
    """Stream for one error category's per-sentence flags."""
    return np.random.default_rng(
        np.random.SeedSequence(seed, spawn_key=(_DOMAIN_CATEGORY, category_index))
    )


def sample_rng(seed: int, stream_key: int) -> np.random.Generator:
    """Stream for one sample draw."""
    return np.random.default_rng(
        np.random.SeedSequence(seed, spawn_key=(_DOMAIN_SAMPLE, stream_key))
    )


def ped_rng(stream_key: int) -> np.random.Generator:
    """Stream for one batch of synthetic PED draws."""
    return np.random.default_rng(np.random.SeedSequence(stream_key, spawn_key=(_DOMAIN_PED,)))

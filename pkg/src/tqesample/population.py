"""Synthetic review populations: per-sentence error flags and sample draws.

A population is a matrix of 0/1 flags, one row per sentence and one column
per error category. Categories are independent layers placed uniformly at
random, so the per-sentence error total is their superposition. Populations
are immutable once generated and regenerate bit-identically from their spec.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .rng import GENERATOR_NAME, category_rng, check_seed, sample_rng

__all__ = [
    "ErrorCategory",
    "Population",
    "PopulationSpec",
    "Sample",
    "draw_sample",
    "error_density",
    "generate_population",
    "load_population",
    "save_population",
]

_FORMAT_NAME = "tqesample-population"
_FORMAT_VERSION = 1


@dataclass(frozen=True)
class ErrorCategory:
    """One independent error layer: a name and its per-sentence density."""

    name: str
    density: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.density <= 1.0:
            raise ValueError(f"density for {self.name!r} must lie in [0, 1], got {self.density}")


@dataclass(frozen=True)
class PopulationSpec:
    """Generative description of a synthetic population.

    Identical specs (seed included) regenerate bit-identical flag matrices.
    """

    num_sentences: int
    categories: tuple[ErrorCategory, ...]
    seed: int = 0

    def __post_init__(self) -> None:
        if self.num_sentences < 1:
            raise ValueError(f"population needs at least one sentence, got {self.num_sentences}")
        cats = tuple(self.categories)
        if not cats:
            raise ValueError("at least one error category is required")
        names = [c.name for c in cats]
        if len(set(names)) != len(names):
            raise ValueError(f"category names must be unique, got {names}")
        check_seed(self.seed)
        object.__setattr__(self, "categories", cats)

    @classmethod
    def single(cls, num_sentences: int, density: float, seed: int = 0, name: str = "errors") -> PopulationSpec:
        """The common one-category case."""
        return cls(num_sentences=num_sentences, categories=(ErrorCategory(name, density),), seed=seed)


@dataclass(frozen=True)
class Population:
    """Realized error flags for a spec, with per-sentence totals precomputed."""

    spec: PopulationSpec
    flags: np.ndarray
    errors_per_sentence: np.ndarray
    total_errors: int
    realized_density: float

    @property
    def num_sentences(self) -> int:
        return self.spec.num_sentences


def _finish(spec: PopulationSpec, flags: np.ndarray) -> Population:
    flags.setflags(write=False)
    per_sentence = flags.sum(axis=1, dtype=np.int64)
    per_sentence.setflags(write=False)
    total = int(per_sentence.sum())
    return Population(
        spec=spec,
        flags=flags,
        errors_per_sentence=per_sentence,
        total_errors=total,
        realized_density=total / spec.num_sentences,
    )


def generate_population(spec: PopulationSpec) -> Population:
    """Draw the per-sentence, per-category error flags for ``spec``.

    Category c's column comes from the stream keyed by (seed, c), so the flag
    at (sentence i, category c) is a pure function of (seed, c, i) and the
    result does not depend on how the work is scheduled.
    """
    n = spec.num_sentences
    flags = np.empty((n, len(spec.categories)), dtype=np.uint8)
    for c, cat in enumerate(spec.categories):
        flags[:, c] = category_rng(spec.seed, c).random(n) < cat.density
    return _finish(spec, flags)


def error_density(pop: Population) -> float:
    """Errors per sentence; exceeds 1 only when several categories overlap."""
    return pop.realized_density


@dataclass(frozen=True)
class Sample:
    """One drawn sample: sorted sentence indices and their error total."""

    indices: np.ndarray
    error_count: int
    size: int


def draw_sample(pop: Population, n: int, stream_key: int, with_replacement: bool = False) -> Sample:
    """Pick n sentences uniformly and total their error flags.

    The default draws without replacement, which is what a reviewer reading
    each sentence once does; ``with_replacement=True`` is available for
    n << N comparisons. The draw is a pure function of
    (pop.spec.seed, stream_key) and is safe to run concurrently.
    """
    if not 1 <= n <= pop.num_sentences:
        raise ValueError(f"sample size must lie in [1, {pop.num_sentences}], got {n}")
    rng = sample_rng(pop.spec.seed, stream_key)
    if with_replacement:
        idx = rng.integers(0, pop.num_sentences, size=n)
    else:
        idx = rng.choice(pop.num_sentences, size=n, replace=False, shuffle=False)
    idx = np.sort(idx)
    idx.setflags(write=False)
    return Sample(indices=idx, error_count=int(pop.errors_per_sentence[idx].sum()), size=n)


def save_population(pop: Population, path: str | Path) -> None:
    """Write a population as a one-line JSON header plus a packed flag bitmap."""
    header = {
        "format": _FORMAT_NAME,
        "version": _FORMAT_VERSION,
        "num_sentences": pop.spec.num_sentences,
        "categories": [{"name": c.name, "density": c.density} for c in pop.spec.categories],
        "seed": pop.spec.seed,
        "generator": GENERATOR_NAME,
        "total_errors": pop.total_errors,
    }
    with open(path, "wb") as fh:
        fh.write(json.dumps(header, sort_keys=True).encode("utf-8"))
        fh.write(b"\n")
        fh.write(np.packbits(pop.flags.reshape(-1)).tobytes())


def load_population(path: str | Path) -> Population:
    """Read a population written by ``save_population``; verifies the totals."""
    with open(path, "rb") as fh:
        header_line = fh.readline()
        payload = fh.read()
    try:
        header = json.loads(header_line.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ValueError(f"{path}: not a population file ({exc})") from exc
    if header.get("format") != _FORMAT_NAME:
        raise ValueError(f"{path}: not a population file")
    spec = PopulationSpec(
        num_sentences=header["num_sentences"],
        categories=tuple(ErrorCategory(c["name"], c["density"]) for c in header["categories"]),
        seed=header["seed"],
    )
    n_flags = spec.num_sentences * len(spec.categories)
    raw = np.frombuffer(payload, dtype=np.uint8)
    if raw.size * 8 < n_flags:
        raise ValueError(f"{path}: bitmap truncated")
    bits = np.unpackbits(raw, count=n_flags)
    pop = _finish(spec, bits.reshape(spec.num_sentences, len(spec.categories)))
    if pop.total_errors != header["total_errors"]:
        raise ValueError(f"{path}: flag bitmap does not match recorded totals")
    return pop

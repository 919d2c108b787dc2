"""Repeated-sampling experiments over synthetic populations.

Each replicate draws a fresh sample from its own derived stream (replicate r
uses stream key r), so a run is reproducible for a given seed and safe to
parallelize: results are reduced in replicate order no matter which worker
finishes first. Empirical intervals are percentile-based and reported next to
the closed-form Wald curve for comparison.
"""

from __future__ import annotations

import csv
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from .intervals import wald_delta
from .population import Population, PopulationSpec, draw_sample, generate_population
from .rng import GENERATOR_NAME, check_seed

__all__ = [
    "DEFAULT_REPLICATES",
    "DEFAULT_SWEEP_SIZES",
    "EmpiricalCI",
    "MCConfig",
    "NormalFit",
    "ReplicateSeries",
    "SweepResult",
    "SweepRow",
    "SWEEP_CSV_COLUMNS",
    "ci_sweep",
    "ci_sweep_population",
    "empirical_ci",
    "fit_normal",
    "histogram",
    "run_replicates",
    "sweep_to_dict",
    "write_histogram_csv",
    "write_sweep_csv",
]

DEFAULT_REPLICATES = 2000

# Coarse ladder spanning the 10..2000-sentence range of interest.
DEFAULT_SWEEP_SIZES = (10, 15, 25, 50, 100, 200, 400, 625, 1000, 1500, 2000)

SWEEP_CSV_COLUMNS = ("sample_size", "mc_delta", "analytic_delta", "lower", "upper")


@dataclass(frozen=True)
class MCConfig:
    """Replication parameters for a sampling experiment."""

    replicates: int = DEFAULT_REPLICATES
    sample_sizes: tuple[int, ...] = DEFAULT_SWEEP_SIZES
    level: float = 0.95
    seed: int = 0

    def __post_init__(self) -> None:
        if self.replicates < 2:
            raise ValueError(f"need at least 2 replicates, got {self.replicates}")
        sizes = tuple(int(s) for s in self.sample_sizes)
        if not sizes:
            raise ValueError("sample_sizes must be nonempty")
        if sizes[0] < 1:
            raise ValueError(f"sample sizes must be >= 1, got {sizes[0]}")
        if any(b <= a for a, b in zip(sizes, sizes[1:])):
            raise ValueError(f"sample sizes must be strictly increasing, got {sizes}")
        if not 0.0 < self.level < 1.0:
            raise ValueError(f"confidence level must lie in (0, 1), got {self.level}")
        check_seed(self.seed)
        object.__setattr__(self, "sample_sizes", sizes)


@dataclass(frozen=True)
class ReplicateSeries:
    """Error counts from repeated samples of one size."""

    sample_size: int
    error_counts: np.ndarray
    densities: np.ndarray


def _ordered_map(fn: Callable[[int], float], count: int, workers: int, dtype) -> np.ndarray:
    """Map fn over range(count), preserving index order regardless of workers."""
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            out = np.fromiter(pool.map(fn, range(count)), dtype=dtype, count=count)
    else:
        out = np.fromiter((fn(r) for r in range(count)), dtype=dtype, count=count)
    out.setflags(write=False)
    return out


def run_replicates(pop: Population, sample_size: int, config: MCConfig, workers: int = 1) -> ReplicateSeries:
    """Draw ``config.replicates`` samples of one size; replicate r uses stream key r."""
    if not 1 <= sample_size <= pop.num_sentences:
        raise ValueError(
            f"sample size must lie in [1, {pop.num_sentences}], got {sample_size}"
        )
    counts = _ordered_map(
        lambda r: draw_sample(pop, sample_size, stream_key=r).error_count,
        config.replicates,
        workers,
        np.int64,
    )
    densities = counts / float(sample_size)
    densities.setflags(write=False)
    return ReplicateSeries(sample_size=sample_size, error_counts=counts, densities=densities)


def histogram(series: ReplicateSeries) -> list[tuple[int, int]]:
    """One bin per distinct error count; frequencies sum to the replicate count."""
    if series.error_counts.size == 0:
        raise ValueError("empty replicate series")
    values, freqs = np.unique(series.error_counts, return_counts=True)
    return [(int(v), int(f)) for v, f in zip(values, freqs)]


@dataclass(frozen=True)
class NormalFit:
    """Maximum-likelihood normal parameters: mean and divide-by-R deviation."""

    mu: float
    sigma: float


def fit_normal(values: Sequence[float] | np.ndarray) -> NormalFit:
    arr = np.asarray(values, dtype=float)
    if arr.size < 2:
        raise ValueError(f"need at least two values to fit, got {arr.size}")
    return NormalFit(mu=float(arr.mean()), sigma=float(arr.std(ddof=0)))


@dataclass(frozen=True)
class EmpiricalCI:
    lower: float
    upper: float
    delta: float


def empirical_ci(values: Sequence[float] | np.ndarray, level: float = 0.95) -> EmpiricalCI:
    """Percentile interval: the (1-level)/2 and (1+level)/2 quantiles with
    linear interpolation between order statistics; delta is half their gap."""
    arr = np.asarray(values, dtype=float)
    if arr.size < 2:
        raise ValueError(f"need at least two values, got {arr.size}")
    if not 0.0 < level < 1.0:
        raise ValueError(f"confidence level must lie in (0, 1), got {level}")
    alpha = (1.0 - level) / 2.0
    lower, upper = np.quantile(arr, [alpha, 1.0 - alpha])
    return EmpiricalCI(lower=float(lower), upper=float(upper), delta=float((upper - lower) / 2.0))


@dataclass(frozen=True)
class SweepRow:
    sample_size: int
    mc_delta: float
    analytic_delta: float
    lower: float
    upper: float


@dataclass(frozen=True)
class SweepResult:
    """Per-size Monte Carlo half-widths next to the analytic curve."""

    rows: tuple[SweepRow, ...]


def ci_sweep_population(pop: Population, config: MCConfig, workers: int = 1) -> SweepResult:
    """Sweep an already-generated population across ``config.sample_sizes``.

    The analytic column uses the population's realized density rather than
    the nominal one, isolating sampling error from generation error.
    """
    if config.sample_sizes[-1] > pop.num_sentences:
        raise ValueError(
            f"largest sample size {config.sample_sizes[-1]} exceeds population "
            f"size {pop.num_sentences}"
        )
    realized = pop.realized_density
    if realized > 1.0:
        raise ValueError(
            "analytic comparison needs a binary density <= 1; "
            f"this population realizes {realized:.3f} errors per sentence"
        )
    rows = []
    for size in config.sample_sizes:
        series = run_replicates(pop, size, config, workers=workers)
        ci = empirical_ci(series.densities, config.level)
        rows.append(
            SweepRow(
                sample_size=size,
                mc_delta=ci.delta,
                analytic_delta=wald_delta(realized, size, config.level),
                lower=ci.lower,
                upper=ci.upper,
            )
        )
    return SweepResult(rows=tuple(rows))


def ci_sweep(spec: PopulationSpec, config: MCConfig, workers: int = 1) -> SweepResult:
    """Generate the population for ``spec`` and sweep it."""
    return ci_sweep_population(generate_population(spec), config, workers=workers)


def write_sweep_csv(sweep: SweepResult, path: str | Path) -> None:
    """Fixed-schema CSV; floats keep full round-trip precision."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(SWEEP_CSV_COLUMNS)
        for row in sweep.rows:
            writer.writerow([row.sample_size, row.mc_delta, row.analytic_delta, row.lower, row.upper])


def write_histogram_csv(bins: list[tuple[int, int]], path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(("count_value", "frequency"))
        writer.writerows(bins)


def sweep_to_dict(sweep: SweepResult, config: MCConfig, spec: PopulationSpec | None = None) -> dict:
    """JSON-ready view with the full configuration embedded for replay."""
    out: dict = {
        "generator": GENERATOR_NAME,
        "config": {
            "replicates": config.replicates,
            "sample_sizes": list(config.sample_sizes),
            "level": config.level,
            "seed": config.seed,
        },
        "rows": [asdict(row) for row in sweep.rows],
    }
    if spec is not None:
        out["population"] = {
            "num_sentences": spec.num_sentences,
            "categories": [{"name": c.name, "density": c.density} for c in spec.categories],
            "seed": spec.seed,
        }
    return out

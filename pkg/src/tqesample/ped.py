"""Post-editing distance scoring and its sampling behaviour.

A segment's edit effort is counted in token insertions and deletions (a
substitution is a delete plus an insert), normalized by the token length of
the pre-edit candidate. That raw score has no upper bound, so reporting
squashes it through 1 - tanh(c * score) onto (0, 1], 1 meaning untouched.
The sampling half of the module answers how the half-width of the mean
normalized score shrinks with sample size.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .intervals import z_for_level
from .montecarlo import MCConfig, SweepResult, SweepRow, empirical_ci, _ordered_map
from .rng import ped_rng

__all__ = [
    "DEFAULT_PED_MODEL",
    "PedDistributionModel",
    "PedRecord",
    "insdel_distance",
    "mean_pedn_sweep",
    "min_size_for_delta",
    "ped_score",
    "pedn",
    "read_pairs_tsv",
    "read_ped_values",
    "sample_ped",
    "score_pairs",
    "tokenize",
]

EMPIRICAL = "empirical"
ZERO_INFLATED = "zero-inflated-exponential"


def tokenize(text: str) -> list[str]:
    """Whitespace tokens; empty or all-space text gives an empty list."""
    return text.split()


def insdel_distance(a: Sequence[str], b: Sequence[str]) -> int:
    """Minimal number of insertions plus deletions turning ``a`` into ``b``.

    There is no single-step substitution: replacing a token costs 2. Equals
    len(a) + len(b) - 2 * LCS(a, b), computed with a two-row LCS table.
    """
    if len(a) < len(b):
        a, b = b, a
    prev = [0] * (len(b) + 1)
    for x in a:
        cur = [0]
        for j, y in enumerate(b, start=1):
            if x == y:
                cur.append(prev[j - 1] + 1)
            else:
                cur.append(max(prev[j], cur[-1]))
        prev = cur
    return len(a) + len(b) - 2 * prev[-1]


def pedn(ped: float | np.ndarray, c: float = 1.0):
    """Normalized score 1 - tanh(c * ped): 1 at ped 0, decreasing toward 0.

    Accepts scalars or arrays. Beyond c * ped of roughly 19 the result
    underflows to exactly 0.0 in double precision.
    """
    if c <= 0:
        raise ValueError(f"normalization constant must be positive, got {c}")
    arr = np.asarray(ped, dtype=float)
    if np.any(arr < 0):
        raise ValueError("PED scores are nonnegative")
    out = 1.0 - np.tanh(c * arr)
    if arr.ndim == 0:
        return float(out)
    return out


@dataclass(frozen=True)
class PedRecord:
    """Scores for one segment."""

    candidate_len: int
    edit_ops: int
    ped: float
    pedn: float


def ped_score(candidate: str, postedited: str, c: float = 1.0, char_level: bool = False) -> PedRecord:
    """Score one segment pair.

    The denominator is the length of the pre-edit candidate, so the score is
    asymmetric and can exceed 1 when the edit adds more tokens than the
    candidate had. ``char_level=True`` scores characters instead of
    whitespace tokens.
    """
    cand = list(candidate) if char_level else tokenize(candidate)
    post = list(postedited) if char_level else tokenize(postedited)
    if not cand:
        raise ValueError("candidate has no tokens; filter empty segments before scoring")
    ops = insdel_distance(cand, post)
    ped = ops / len(cand)
    return PedRecord(candidate_len=len(cand), edit_ops=ops, ped=ped, pedn=pedn(ped, c))


@dataclass(frozen=True)
class PedDistributionModel:
    """Where synthetic per-segment PED values come from.

    ``empirical`` resamples (with replacement) a supplied list of observed
    scores; ``zero-inflated-exponential`` emits 0 with probability
    ``zero_mass`` and an exponential(rate=tail_rate) draw otherwise.
    """

    kind: str
    empirical_values: tuple[float, ...] | None = None
    zero_mass: float | None = None
    tail_rate: float | None = None

    def __post_init__(self) -> None:
        if self.kind == EMPIRICAL:
            if not self.empirical_values:
                raise ValueError("empirical model needs at least one value")
            vals = tuple(float(v) for v in self.empirical_values)
            if any(v < 0 for v in vals):
                raise ValueError("PED values are nonnegative")
            object.__setattr__(self, "empirical_values", vals)
        elif self.kind == ZERO_INFLATED:
            if self.zero_mass is None or self.tail_rate is None:
                raise ValueError("zero-inflated model needs zero_mass and tail_rate")
            if not 0.0 <= self.zero_mass <= 1.0:
                raise ValueError(f"zero_mass must lie in [0, 1], got {self.zero_mass}")
            if self.tail_rate <= 0:
                raise ValueError(f"tail_rate must be positive, got {self.tail_rate}")
        else:
            raise ValueError(f"unknown model kind {self.kind!r}")

    @classmethod
    def from_values(cls, values: Sequence[float]) -> PedDistributionModel:
        return cls(kind=EMPIRICAL, empirical_values=tuple(values))

    @classmethod
    def zero_inflated(cls, zero_mass: float, tail_rate: float) -> PedDistributionModel:
        return cls(kind=ZERO_INFLATED, zero_mass=zero_mass, tail_rate=tail_rate)

    def to_dict(self) -> dict:
        if self.kind == EMPIRICAL:
            return {"kind": self.kind, "num_values": len(self.empirical_values)}
        return {"kind": self.kind, "zero_mass": self.zero_mass, "tail_rate": self.tail_rate}


# Plausible machine-translation post-editing profile: about a third of
# segments shipped untouched, mean raw score around 0.22.
DEFAULT_PED_MODEL = PedDistributionModel.zero_inflated(zero_mass=0.35, tail_rate=3.0)


def sample_ped(model: PedDistributionModel, n: int, stream_key: int) -> np.ndarray:
    """Draw n synthetic PED values; a pure function of (model, n, stream_key)."""
    if n < 1:
        raise ValueError(f"need at least one draw, got {n}")
    rng = ped_rng(stream_key)
    if model.kind == EMPIRICAL:
        values = np.asarray(model.empirical_values, dtype=float)
        return values[rng.integers(0, values.size, size=n)]
    zeros = rng.random(n) < model.zero_mass
    draws = rng.exponential(scale=1.0 / model.tail_rate, size=n)
    return np.where(zeros, 0.0, draws)


def _sweep_stream_key(seed: int, size_index: int, replicate: int) -> int:
    # injective composite; SeedSequence takes arbitrarily large entropy
    return (seed << 44) | (size_index << 24) | replicate


def mean_pedn_sweep(
    model: PedDistributionModel,
    c: float = 1.0,
    config: MCConfig = MCConfig(),
    workers: int = 1,
) -> SweepResult:
    """Half-width of the mean normalized score as a function of sample size.

    For each size, every replicate draws that many PED values, maps them
    through ``pedn`` and averages. ``mc_delta`` is the percentile interval
    over replicate means; ``analytic_delta`` is z times the replicate-mean
    standard deviation, the normal-theory view of the same spread.
    """
    z = z_for_level(config.level)
    rows = []
    for si, size in enumerate(config.sample_sizes):

        def mean_for(r: int, _size: int = size, _si: int = si) -> float:
            draws = sample_ped(model, _size, _sweep_stream_key(config.seed, _si, r))
            return float(np.mean(pedn(draws, c)))

        means = _ordered_map(mean_for, config.replicates, workers, np.float64)
        ci = empirical_ci(means, config.level)
        rows.append(
            SweepRow(
                sample_size=size,
                mc_delta=ci.delta,
                analytic_delta=z * float(np.std(means, ddof=0)),
                lower=ci.lower,
                upper=ci.upper,
            )
        )
    return SweepResult(rows=tuple(rows))


def min_size_for_delta(sweep: SweepResult, target: float) -> int | None:
    """Smallest swept size whose mc_delta meets the target, if any."""
    if target <= 0:
        raise ValueError(f"target half-width must be positive, got {target}")
    for row in sweep.rows:
        if row.mc_delta <= target:
            return row.sample_size
    return None


def read_pairs_tsv(path: str | Path) -> list[tuple[str, str]]:
    """Two tab-separated columns per line: candidate, post-edited text.

    Blank lines are skipped; anything else malformed is an error naming the
    line number.
    """
    pairs = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\r\n")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise ValueError(
                    f"{path}: line {lineno}: expected 2 tab-separated columns, found {len(parts)}"
                )
            pairs.append((parts[0], parts[1]))
    return pairs


def read_ped_values(path: str | Path) -> list[float]:
    """One nonnegative PED value per line; blank lines are skipped."""
    values = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                value = float(line)
            except ValueError:
                raise ValueError(f"{path}: line {lineno}: not a number: {line!r}") from None
            if value < 0:
                raise ValueError(f"{path}: line {lineno}: PED values are nonnegative, got {value}")
            values.append(value)
    return values


def score_pairs(
    pairs: Sequence[tuple[str, str]], c: float = 1.0, char_level: bool = False
) -> tuple[list[PedRecord], int]:
    """Score segment pairs, skipping (and counting) empty candidates."""
    records: list[PedRecord] = []
    skipped = 0
    for cand, post in pairs:
        toks = list(cand) if char_level else tokenize(cand)
        if not toks:
            skipped += 1
            continue
        records.append(ped_score(cand, post, c=c, char_level=char_level))
    return records, skipped

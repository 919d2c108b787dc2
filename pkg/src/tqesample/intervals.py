"""Closed-form confidence intervals for per-sentence error densities.

The review model treats each sentence as a Bernoulli trial: an error is
present or it is not, independently and with a fixed probability. The error
density observed on a sample of n sentences then carries a normal-approximation
(Wald) confidence interval whose half-width shrinks like 1/sqrt(n), with a
finite-population correction when the sample is a sizable share of the job.
The same algebra inverts into the sample size required for a target half-width.

Sentence counts are real-valued throughout: counts converted from words
(``sentences_from_words``) are rarely whole numbers and are used as-is.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from statistics import NormalDist

__all__ = [
    "ConversionConstants",
    "IntervalEstimate",
    "SampleSizeResult",
    "TextVolume",
    "convert_sentences",
    "fpc_interval",
    "fpc_sigma",
    "required_sample_size",
    "sentences_from_words",
    "wald_delta",
    "wald_interval",
    "wald_sigma",
    "z_for_level",
]

# The 95% two-sided z is pinned to the conventional table value so reported
# intervals match hand calculations digit for digit; other levels use the
# numeric inverse CDF.
_Z_TABLE = {0.95: 1.96}

# Below this many expected errors (or non-errors) in the sample the normal
# approximation is unreliable; intervals carry a warning flag.
_SMALL_SAMPLE_RULE = 5.0


def _check_proportion(p: float, name: str = "p") -> float:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {p}")
    return float(p)


def _check_level(level: float) -> float:
    if not 0.0 < level < 1.0:
        raise ValueError(f"confidence level must lie in (0, 1), got {level}")
    return float(level)


def z_for_level(level: float) -> float:
    """Two-sided standard-normal quantile for a confidence level in (0, 1)."""
    _check_level(level)
    if level in _Z_TABLE:
        return _Z_TABLE[level]
    return NormalDist().inv_cdf(0.5 + level / 2.0)


def wald_sigma(p: float, n: float) -> float:
    """Standard error sqrt(p(1-p)/n) of a proportion observed on n units."""
    _check_proportion(p)
    if n <= 0:
        raise ValueError(f"sample size must be positive, got {n}")
    return math.sqrt(p * (1.0 - p) / n)


def wald_delta(p: float, n: float, level: float = 0.95) -> float:
    """Half-width of the normal-approximation interval: z * sqrt(p(1-p)/n)."""
    return z_for_level(level) * wald_sigma(p, n)


def fpc_sigma(p: float, n: float, N: float) -> float:
    """Standard error with the finite-population correction.

    sqrt(p(1-p)/n * (N-n)/(N-1)), for a sample of n out of N units drawn
    without replacement. Approaches ``wald_sigma`` as N grows and reaches
    exactly 0 at a full census (n = N).
    """
    _check_proportion(p)
    if N <= 1:
        raise ValueError(f"population size must exceed 1, got {N}")
    if n <= 0:
        raise ValueError(f"sample size must be positive, got {n}")
    if n > N:
        raise ValueError(f"sample size {n} exceeds population size {N}")
    return math.sqrt(p * (1.0 - p) / n * (N - n) / (N - 1.0))


@dataclass(frozen=True)
class IntervalEstimate:
    """A point estimate with symmetric half-width and bounds clamped to [0, 1].

    ``delta`` itself is never truncated, so the pre-clamping interval
    ``point +/- delta`` stays reconstructable even when a reported bound was
    clamped. ``small_sample`` is set when the sample holds fewer than 5
    expected errors or non-errors and the normal approximation is rough.
    """

    point: float
    delta: float
    lower: float
    upper: float
    level: float
    clamped: bool
    small_sample: bool
    n: float
    method: str

    def __post_init__(self) -> None:
        if not self.lower <= self.point <= self.upper:
            raise ValueError(
                f"inconsistent interval: [{self.lower}, {self.upper}] around {self.point}"
            )


def _build_interval(p: float, delta: float, level: float, n: float, method: str) -> IntervalEstimate:
    lower = max(0.0, p - delta)
    upper = min(1.0, p + delta)
    clamped = lower != p - delta or upper != p + delta
    small = n * p < _SMALL_SAMPLE_RULE or n * (1.0 - p) < _SMALL_SAMPLE_RULE
    return IntervalEstimate(
        point=p,
        delta=delta,
        lower=lower,
        upper=upper,
        level=level,
        clamped=clamped,
        small_sample=small,
        n=float(n),
        method=method,
    )


def wald_interval(p: float, n: float, level: float = 0.95) -> IntervalEstimate:
    """Interval p +/- wald_delta with reported bounds clamped to [0, 1]."""
    return _build_interval(p, wald_delta(p, n, level), _check_level(level), n, "wald")


def fpc_interval(p: float, n: float, N: float, level: float = 0.95) -> IntervalEstimate:
    """Finite-population interval p +/- z * fpc_sigma, bounds clamped to [0, 1]."""
    delta = z_for_level(level) * fpc_sigma(p, n, N)
    return _build_interval(p, delta, _check_level(level), n, "fpc")


@dataclass(frozen=True)
class SampleSizeResult:
    """Exact real-valued solution and the integer recommendation."""

    exact: float
    recommended: int


def required_sample_size(p: float, delta: float, level: float = 0.95) -> SampleSizeResult:
    """Smallest sample size whose half-width does not exceed ``delta``.

    ``exact`` solves z^2 * p(1-p) / delta^2; ``recommended`` rounds it up,
    the only rounding that keeps wald_delta(p, recommended) <= delta.
    """
    _check_proportion(p)
    if delta <= 0:
        raise ValueError(f"target half-width must be positive, got {delta}")
    z = z_for_level(level)
    exact = z * z * p * (1.0 - p) / (delta * delta)
    recommended = math.ceil(exact)
    # ceil on a float can land one short when exact sits on an integer boundary
    if recommended > 0 and wald_delta(p, recommended, level) > delta:
        recommended += 1
    return SampleSizeResult(exact=exact, recommended=recommended)


@dataclass(frozen=True)
class ConversionConstants:
    """Word/sentence/page equivalences for expressing sample sizes in
    reviewer-friendly units."""

    words_per_sentence: float = 17.0
    sentences_per_page: float = 15.0
    words_per_page: float = 250.0

    def __post_init__(self) -> None:
        for name in ("words_per_sentence", "sentences_per_page", "words_per_page"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")


DEFAULT_CONSTANTS = ConversionConstants()


@dataclass(frozen=True)
class TextVolume:
    """The same amount of text in three units."""

    sentences: float
    words: float
    pages: float


def convert_sentences(sentences: float, constants: ConversionConstants = DEFAULT_CONSTANTS) -> TextVolume:
    """Express a sentence count as words and pages."""
    if sentences < 0:
        raise ValueError(f"sentence count must be nonnegative, got {sentences}")
    return TextVolume(
        sentences=float(sentences),
        words=sentences * constants.words_per_sentence,
        pages=sentences / constants.sentences_per_page,
    )


def sentences_from_words(words: float, constants: ConversionConstants = DEFAULT_CONSTANTS) -> float:
    """Sentence count equivalent to a word count."""
    if words < 0:
        raise ValueError(f"word count must be nonnegative, got {words}")
    return words / constants.words_per_sentence

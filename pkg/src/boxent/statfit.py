"""Empirical distribution fitting: first-digit statistics, token
rank-frequency tables, and log-log power-law slope estimation.

Digit extraction never scales floats step by step (which drifts) and
never converts text to binary (which rounds). Text inputs are scanned
as exact decimal strings, so "0.00321" and "3.21e17" give 3 with no
precision questions. Binary floats are scanned through their shortest
round-trip representation: values within rounding distance of a digit
boundary (the float spelled 7e300 is really 6.99999999999999942e300)
report the boundary digit, which is what the decimal literal behind the
float meant.
"""

from __future__ import annotations

import decimal
import math
import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np
from scipy import stats as _scipy_stats

from .theory import RankDistribution, benford_frequency

__all__ = [
    "DigitHistogram",
    "FitReport",
    "SlopeFit",
    "first_significant_digit",
    "digit_histogram",
    "benford_expected",
    "benford_test",
    "count_tokens",
    "rank_distribution_from_counts",
    "rank_frequency_of_tokens",
    "zipf_check",
    "power_law_fit",
    "loglog_slope_fit",
    "CHI_SQUARE_DF",
    "MIN_SAMPLE",
    "DEFAULT_MAD_THRESHOLD",
]

# Chi-square validity floor and conventional defaults for the screen.
MIN_SAMPLE = 50
CHI_SQUARE_DF = 8
DEFAULT_SIGNIFICANCE = 0.01
DEFAULT_MAD_THRESHOLD = 0.012

# Plain decimal or scientific notation; no thousands separators.
_NUMBER_RE = re.compile(r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?")

# Fits over more candidate ranks than this are thinned log-spaced.
_FIT_SUBSAMPLE = 1000


@dataclass(frozen=True)
class DigitHistogram:
    """First-significant-digit tallies (digits 1..9) plus a skipped count
    for inputs that have no significant digit (zeros, non-finite,
    unparseable)."""

    counts: tuple[int, ...]
    skipped: int = 0

    def __post_init__(self):
        if len(self.counts) != 9:
            raise ValueError("counts must hold exactly the digits 1..9")
        if any(c < 0 for c in self.counts) or self.skipped < 0:
            raise ValueError("counts must be non-negative")

    @property
    def total(self) -> int:
        return sum(self.counts)

    def count(self, digit: int) -> int:
        if not 1 <= digit <= 9:
            raise ValueError(f"digit must be in 1..9, got {digit}")
        return self.counts[digit - 1]

    def __add__(self, other: "DigitHistogram") -> "DigitHistogram":
        return DigitHistogram(
            counts=tuple(a + b for a, b in zip(self.counts, other.counts)),
            skipped=self.skipped + other.skipped,
        )


@dataclass(frozen=True)
class FitReport:
    """Outcome of a conformance test against the first-digit law."""

    statistic_kind: str
    statistic: float
    threshold: float
    conforms: bool
    degrees_of_freedom: int | None = None


@dataclass(frozen=True)
class SlopeFit:
    """Least-squares line through (ln x, ln y) points."""

    slope: float
    intercept: float
    r_squared: float
    fit_range: tuple[float, float]
    points_used: int


def _digit_from_decimal_string(text: str) -> int | None:
    s = text.strip()
    if not _NUMBER_RE.fullmatch(s):
        return None
    mantissa = s.split("e")[0].split("E")[0]
    for ch in mantissa:
        if ch in "123456789":
            return int(ch)
    return None  # all-zero mantissa


def first_significant_digit(x) -> int | None:
    """Leading significant decimal digit of x, or None if there is none.

    Total function: 0, NaN, infinities, and non-numeric input map to None.
    Strings are scanned as exact decimal text (the exponent cannot change
    the answer). Binary floats go through their shortest round-trip
    decimal, which collapses values within rounding distance of a digit
    boundary onto the boundary.
    """
    if isinstance(x, str):
        return _digit_from_decimal_string(x)
    if isinstance(x, bool) or x is None:
        return None
    if isinstance(x, (int, np.integer)):
        if x == 0:
            return None
        return int(str(abs(int(x)))[0])
    if isinstance(x, (float, np.floating)):
        v = float(x)
        if not math.isfinite(v) or v == 0.0:
            return None
        return _digit_from_decimal_string(repr(abs(v)))
    if isinstance(x, decimal.Decimal):
        if not x.is_finite() or x == 0:
            return None
        return x.as_tuple().digits[0]
    return None


def digit_histogram(values: Iterable) -> DigitHistogram:
    """Tally first significant digits over a stream, single pass.

    Permutation- and chunking-invariant: partial histograms merged with
    `+` equal the whole-stream histogram.
    """
    counts = [0] * 9
    skipped = 0
    for value in values:
        d = first_significant_digit(value)
        if d is None:
            skipped += 1
        else:
            counts[d - 1] += 1
    return DigitHistogram(counts=tuple(counts), skipped=skipped)


def benford_expected() -> np.ndarray:
    """Expected first-digit frequencies log10(1 + 1/d), d = 1..9."""
    return np.array([benford_frequency(d) for d in range(1, 10)])


def benford_test(
    hist: DigitHistogram,
    statistic_kind: str = "chi_square",
    threshold: float | None = None,
    significance: float = DEFAULT_SIGNIFICANCE,
) -> FitReport:
    """Test observed digit counts against the first-digit law.

    chi_square: sum((O-E)^2 / E) with E_d = total * log10(1+1/d), df = 8,
    compared to the critical value at `significance` (or an explicit
    `threshold`). mad: mean absolute deviation of the digit frequencies,
    compared to `threshold` (default 0.012).
    """
    total = hist.total
    if total < MIN_SAMPLE:
        raise ValueError(
            f"need at least {MIN_SAMPLE} counted values for a meaningful "
            f"test, got {total}"
        )
    expected_freq = benford_expected()
    observed = np.asarray(hist.counts, dtype=float)

    if statistic_kind == "chi_square":
        if threshold is None:
            if not 0.0 < significance < 1.0:
                raise ValueError(f"significance must be in (0,1), got {significance}")
            threshold = float(_scipy_stats.chi2.isf(significance, CHI_SQUARE_DF))
        if threshold <= 0:
            raise ValueError(f"threshold must be positive, got {threshold}")
        expected = total * expected_freq
        statistic = float(np.sum((observed - expected) ** 2 / expected))
        return FitReport(
            statistic_kind="chi_square",
            statistic=statistic,
            threshold=threshold,
            conforms=statistic <= threshold,
            degrees_of_freedom=CHI_SQUARE_DF,
        )
    if statistic_kind == "mad":
        if threshold is None:
            threshold = DEFAULT_MAD_THRESHOLD
        if threshold <= 0:
            raise ValueError(f"threshold must be positive, got {threshold}")
        statistic = float(np.mean(np.abs(observed / total - expected_freq)))
        return FitReport(
            statistic_kind="mad",
            statistic=statistic,
            threshold=threshold,
            conforms=statistic <= threshold,
        )
    raise ValueError(f"unknown statistic kind {statistic_kind!r}")


def count_tokens(tokens: Iterable[str]) -> Counter:
    """Multiplicity counter; partial counters merge with `+`."""
    return Counter(tokens)


def rank_distribution_from_counts(counts: Mapping[str, int]) -> RankDistribution:
    """Rank tokens by count (ties broken lexicographically) and normalize."""
    if not counts:
        raise ValueError("no tokens to rank")
    ordered = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    total = sum(c for _, c in ordered)
    freqs = np.array([c for _, c in ordered], dtype=float) / total
    return RankDistribution(
        max_rank=len(ordered),
        frequencies=freqs,
        labels=tuple(t for t, _ in ordered),
    )


def rank_frequency_of_tokens(tokens: Iterable[str]) -> RankDistribution:
    """Empirical rank-frequency distribution of a token stream."""
    return rank_distribution_from_counts(count_tokens(tokens))


def zipf_check(dist: RankDistribution, n: int) -> float:
    """Frequency ratio f(n)/f(2n); near 2 for data following the rank law."""
    if n < 1 or 2 * n > dist.max_rank:
        raise ValueError(f"need 1 <= n and 2n <= {dist.max_rank}, got n={n}")
    f2 = dist.frequency(2 * n)
    if f2 <= 0:
        raise ValueError(f"frequency at rank {2 * n} is not positive")
    return dist.frequency(n) / f2


def power_law_fit(x, y) -> SlopeFit:
    """Ordinary least squares of ln y on ln x.

    Requires at least 3 strictly positive (x, y) points.
    """
    xs = np.asarray(x, dtype=float)
    ys = np.asarray(y, dtype=float)
    keep = (xs > 0) & (ys > 0) & np.isfinite(xs) & np.isfinite(ys)
    xs, ys = xs[keep], ys[keep]
    if len(xs) < 3:
        raise ValueError(f"need at least 3 positive points, got {len(xs)}")
    lx, ly = np.log(xs), np.log(ys)
    dx = lx - lx.mean()
    dy = ly - ly.mean()
    var = float(np.sum(dx * dx))
    if var == 0.0:
        raise ValueError("all x values coincide; slope is undefined")
    slope = float(np.sum(dx * dy)) / var
    intercept = float(ly.mean() - slope * lx.mean())
    ss_res = float(np.sum((ly - (intercept + slope * lx)) ** 2))
    ss_tot = float(np.sum(dy * dy))
    r_squared = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return SlopeFit(
        slope=slope,
        intercept=intercept,
        r_squared=r_squared,
        fit_range=(float(xs.min()), float(xs.max())),
        points_used=int(len(xs)),
    )


def loglog_slope_fit(
    dist: RankDistribution,
    fit_range: tuple[int, int] | None = None,
) -> SlopeFit:
    """Power-law slope of a rank distribution over ranks [lo, hi].

    Large distributions (max_rank >= 1e5) are thinned to ~1000 log-spaced
    ranks so the dense tail does not dominate the regression.
    """
    lo, hi = fit_range if fit_range is not None else (1, dist.max_rank)
    if not 1 <= lo <= hi <= dist.max_rank:
        raise ValueError(
            f"fit range [{lo}, {hi}] must lie inside 1..{dist.max_rank}"
        )
    if dist.max_rank >= 10**5 and hi - lo + 1 > _FIT_SUBSAMPLE:
        ranks = np.unique(
            np.round(np.geomspace(lo, hi, _FIT_SUBSAMPLE)).astype(np.int64)
        )
    else:
        ranks = np.arange(lo, hi + 1, dtype=np.int64)
    freqs = dist.frequencies[ranks - 1]
    fit = power_law_fit(ranks, freqs)
    return SlopeFit(
        slope=fit.slope,
        intercept=fit.intercept,
        r_squared=fit.r_squared,
        fit_range=(float(lo), float(hi)),
        points_used=fit.points_used,
    )

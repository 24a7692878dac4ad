"""Closed-form occupancy statistics for particles in boxes.

Everything here is a pure function of its arguments: exact microstate
counting for indistinguishable particles in distinguishable boxes, the
associated entropies, the maximum-entropy occupancy law
phi(n) = (1/beta) ln(1 + 1/n), and its specializations — rank
frequencies f(r) = ln(1+1/r)/ln(R+1), first-digit frequencies
log10(1+1/d), Pareto concentration splits, and the unimodal
phi * exp(-beta*phi) weight of the sparse (bell) regime.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import numpy as np

_LN10 = math.log(10.0)

# Dense rank vectors above this are refused; use iter_rank_frequencies.
MAX_DENSE_RANKS = 10**9

__all__ = [
    "SystemShape",
    "LagrangeParams",
    "SpectrumSource",
    "OccupancySpectrum",
    "RankDistribution",
    "BellCurvePoint",
    "omega",
    "boltzmann_entropy_exact",
    "boltzmann_entropy_stirling",
    "gibbs_shannon_entropy",
    "phi_unnormalized",
    "planck_occupancy",
    "zipf_ratio",
    "occupied_normalizer",
    "occupancy_frequency",
    "rank_distribution",
    "iter_rank_frequencies",
    "benford_frequency",
    "pareto_split",
    "bell_weight",
    "bell_mode",
    "bell_curve",
    "loglog_curve",
    "theoretical_occupancy_spectrum",
    "MAX_DENSE_RANKS",
]


def _require_count(value, name: str, minimum: int) -> int:
    if not isinstance(value, (int, np.integer)) or isinstance(value, bool):
        raise ValueError(f"{name} must be an integer, got {value!r}")
    if value < minimum:
        raise ValueError(f"{name} must be >= {minimum}, got {value}")
    return int(value)


@dataclass(frozen=True)
class SystemShape:
    """N distinguishable boxes holding P indistinguishable particles."""

    boxes: int
    particles: int

    def __post_init__(self):
        _require_count(self.boxes, "boxes", 1)
        _require_count(self.particles, "particles", 0)

    @property
    def mean_occupancy(self) -> float:
        return self.particles / self.boxes


@dataclass(frozen=True)
class LagrangeParams:
    """Constraint multiplier beta > 0; the temperature is its reciprocal."""

    beta: float

    def __post_init__(self):
        if not (isinstance(self.beta, (int, float)) and math.isfinite(self.beta)):
            raise ValueError(f"beta must be a finite number, got {self.beta!r}")
        if self.beta <= 0:
            raise ValueError(f"beta must be > 0, got {self.beta}")

    @property
    def temperature(self) -> float:
        return 1.0 / self.beta


class SpectrumSource(str, Enum):
    """How an occupancy spectrum was produced."""

    EXACT_CENSUS = "exact_census"
    MONTE_CARLO = "monte_carlo"
    THEORY = "theory"


@dataclass(frozen=True)
class OccupancySpectrum:
    """Per-occupancy weights of occupied boxes (occupancy 0 is excluded).

    `entries` maps each occupancy n >= 1 to a non-negative weight; weights
    divided by `normalizer` are the relative frequencies and must sum to 1.
    Census and Monte Carlo spectra use integer counts so frequencies stay
    exact rationals.
    """

    source: SpectrumSource
    entries: tuple[tuple[int, float], ...]
    normalizer: float

    def __post_init__(self):
        if not self.entries:
            raise ValueError("spectrum needs at least one occupied occupancy")
        prev = 0
        for n, weight in self.entries:
            if not isinstance(n, (int, np.integer)) or n < 1:
                raise ValueError(f"occupancy must be a positive integer, got {n!r}")
            if n <= prev:
                raise ValueError("occupancies must be strictly increasing")
            if weight < 0:
                raise ValueError(f"weight for occupancy {n} is negative")
            prev = n
        if self.normalizer <= 0:
            raise ValueError("normalizer must be positive")
        if isinstance(self.normalizer, int) and all(
            isinstance(w, int) for _, w in self.entries
        ):
            if sum(w for _, w in self.entries) != self.normalizer:
                raise ValueError("integer weights must sum to the normalizer")
        else:
            total = math.fsum(w for _, w in self.entries) / self.normalizer
            if abs(total - 1.0) > 1e-12:
                raise ValueError(f"normalized weights sum to {total!r}, expected 1")

    def occupancies(self) -> tuple[int, ...]:
        return tuple(n for n, _ in self.entries)

    def frequency(self, n: int):
        """Relative frequency of occupancy n (exact Fraction for count data)."""
        for occ, weight in self.entries:
            if occ == n:
                if isinstance(weight, int) and isinstance(self.normalizer, int):
                    return Fraction(weight, self.normalizer)
                return weight / self.normalizer
        return 0 if isinstance(self.normalizer, int) else 0.0

    def frequencies(self) -> dict[int, float]:
        return {n: w / self.normalizer for n, w in self.entries}


@dataclass(frozen=True)
class RankDistribution:
    """Frequencies over ranks 1..max_rank, non-increasing and summing to 1.

    `frequencies[r-1]` is the frequency of rank r. Empirical distributions
    may attach the token behind each rank via `labels`.
    """

    max_rank: int
    frequencies: np.ndarray
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        _require_count(self.max_rank, "max_rank", 1)
        freqs = np.asarray(self.frequencies, dtype=float)
        if freqs.ndim != 1 or len(freqs) != self.max_rank:
            raise ValueError("frequencies must be a vector of length max_rank")
        if np.any(freqs <= 0):
            raise ValueError("frequencies must be positive")
        if np.any(np.diff(freqs) > 0):
            raise ValueError("frequencies must be non-increasing in rank")
        total = math.fsum(freqs.tolist())
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"frequencies sum to {total!r}, expected 1")
        if self.labels is not None and len(self.labels) != self.max_rank:
            raise ValueError("labels must match max_rank")
        freqs.flags.writeable = False
        object.__setattr__(self, "frequencies", freqs)

    def frequency(self, rank: int) -> float:
        if not 1 <= rank <= self.max_rank:
            raise ValueError(f"rank {rank} outside 1..{self.max_rank}")
        return float(self.frequencies[rank - 1])

    def items(self) -> Iterator[tuple[int, float]]:
        for i, f in enumerate(self.frequencies):
            yield i + 1, float(f)


@dataclass(frozen=True)
class BellCurvePoint:
    """One point of the sparse-regime curve: (phi, e^(-beta*phi), weight)."""

    frequency_phi: float
    particle_fraction: float
    weight: float


def omega(particles: int, boxes: int) -> int:
    """Number of microstates of P indistinguishable particles in N boxes.

    Bose-Einstein counting (N+P-1)! / (P! (N-1)!), exact arbitrary precision.
    """
    p = _require_count(particles, "particles", 0)
    n = _require_count(boxes, "boxes", 1)
    return math.comb(n + p - 1, p)


def boltzmann_entropy_exact(particles: int, boxes: int) -> float:
    """ln(omega) via log-gamma; safe far beyond 64-bit factorial range."""
    p = _require_count(particles, "particles", 0)
    n = _require_count(boxes, "boxes", 1)
    return math.lgamma(n + p) - math.lgamma(p + 1) - math.lgamma(n)


def boltzmann_entropy_stirling(shape: SystemShape) -> float:
    """Stirling approximation N[(1+n)ln(1+n) - n ln n] with n = P/N."""
    nbar = shape.mean_occupancy
    if nbar == 0:
        return 0.0
    return shape.boxes * ((1.0 + nbar) * math.log1p(nbar) - nbar * math.log(nbar))


def gibbs_shannon_entropy(probabilities: Iterable[float]) -> float:
    """-sum(p ln p) over a normalized probability vector; 0 ln 0 := 0."""
    ps = [float(p) for p in probabilities]
    for p in ps:
        if p < 0 or not math.isfinite(p):
            raise ValueError(f"probabilities must be non-negative, got {p!r}")
    total = math.fsum(ps)
    if abs(total - 1.0) > 1e-9:
        raise ValueError(f"probabilities sum to {total!r}, expected 1 within 1e-9")
    return -math.fsum(p * math.log(p) for p in ps if p > 0)


def phi_unnormalized(n: float, params: LagrangeParams) -> float:
    """Occupancy-law frequency phi(n) = (1/beta) ln(1 + 1/n).

    Real n > 0 is accepted so curves can be emitted; distribution-level
    operations take integer occupancies.
    """
    if not (n > 0 and math.isfinite(n)):
        raise ValueError(f"occupancy must be > 0, got {n!r}")
    return math.log1p(1.0 / n) / params.beta


def planck_occupancy(phi: float, params: LagrangeParams) -> float:
    """Inverse of the occupancy law: n = 1 / (e^(beta*phi) - 1)."""
    x = params.beta * phi
    if not (x > 0 and math.isfinite(x)):
        raise ValueError(f"beta*phi must be > 0, got {x!r}")
    return 1.0 / math.expm1(x)


def zipf_ratio(n: float) -> float:
    """phi(n)/phi(2n) = ln(1+1/n)/ln(1+1/(2n)); beta cancels, tends to 2."""
    if not n >= 1:
        raise ValueError(f"occupancy must be >= 1, got {n!r}")
    return math.log1p(1.0 / n) / math.log1p(0.5 / n)


def occupied_normalizer(occupied_boxes: int, params: LagrangeParams) -> float:
    """Telescoped sum of phi over occupancies 1..M: (1/beta) ln(M+1)."""
    m = _require_count(occupied_boxes, "occupied_boxes", 1)
    return math.log(m + 1.0) / params.beta


def occupancy_frequency(n: int, occupied_boxes: int) -> float:
    """Normalized occupancy frequency f(n) = ln(1+1/n)/ln(M+1)."""
    m = _require_count(occupied_boxes, "occupied_boxes", 1)
    occ = _require_count(n, "n", 1)
    if occ > m:
        raise ValueError(f"occupancy {occ} exceeds occupied box count {m}")
    return math.log1p(1.0 / occ) / math.log(m + 1.0)


def rank_distribution(max_rank: int) -> RankDistribution:
    """Theoretical rank frequencies f(r) = ln(1+1/r)/ln(R+1), r = 1..R."""
    r_max = _require_count(max_rank, "max_rank", 1)
    if r_max > MAX_DENSE_RANKS:
        raise ValueError(
            f"max_rank {r_max} exceeds dense limit {MAX_DENSE_RANKS}; "
            "use iter_rank_frequencies for streaming emission"
        )
    norm = math.log(r_max + 1.0)
    freqs = np.array([math.log1p(1.0 / r) for r in range(1, r_max + 1)]) / norm
    return RankDistribution(max_rank=r_max, frequencies=freqs)


def iter_rank_frequencies(max_rank: int) -> Iterator[tuple[int, float]]:
    """Stream (rank, frequency) pairs without materializing the vector."""
    r_max = _require_count(max_rank, "max_rank", 1)
    norm = math.log(r_max + 1.0)
    for r in range(1, r_max + 1):
        yield r, math.log1p(1.0 / r) / norm


def benford_frequency(d: int) -> float:
    """First-significant-digit frequency log10(1 + 1/d) for d in 1..9."""
    digit = _require_count(d, "digit", 1)
    if digit > 9:
        raise ValueError(f"digit must be in 1..9, got {digit}")
    return math.log1p(1.0 / digit) / _LN10


def pareto_split(max_rank: int, top_k: int) -> tuple[float, float]:
    """Concentration summary for the richest top_k of R ranks.

    Returns (population_share, particle_share): the frequency mass of ranks
    R-top_k+1..R (telescoped) and their share of total particle groups
    sum(r) / (R(R+1)/2). The particle share is an exact ratio of integers.
    """
    r_max = _require_count(max_rank, "max_rank", 1)
    k = _require_count(top_k, "top_k", 1)
    if k > r_max:
        raise ValueError(f"top_k {k} exceeds max_rank {r_max}")
    population_share = 1.0 - math.log(r_max - k + 1.0) / math.log(r_max + 1.0)
    top_groups = k * (2 * r_max - k + 1) // 2
    total_groups = r_max * (r_max + 1) // 2
    return population_share, top_groups / total_groups


def bell_weight(phi: float, params: LagrangeParams) -> float:
    """Per-box particle weight phi * e^(-beta*phi) of the sparse regime."""
    if not (phi >= 0 and math.isfinite(phi)):
        raise ValueError(f"phi must be >= 0, got {phi!r}")
    return phi * math.exp(-params.beta * phi)


def bell_mode(params: LagrangeParams) -> float:
    """Location of the bell_weight maximum: phi_max = 1/beta."""
    return 1.0 / params.beta


def bell_curve(
    params: LagrangeParams,
    phis: Sequence[float],
    normalize: bool = False,
) -> list[BellCurvePoint]:
    """Evaluate the sparse-regime curve at the given phi grid.

    Raw mode emits phi * e^(-beta*phi) per point. With `normalize` the
    weights carry an extra beta^2 so the continuous curve is the unit-mass
    Gamma(shape 2, rate beta) density. As beta -> 0 the particle fractions
    flatten toward 1: the even-occupancy limit.
    """
    scale = params.beta**2 if normalize else 1.0
    points = []
    for phi in phis:
        p = float(phi)
        if not (p >= 0 and math.isfinite(p)):
            raise ValueError(f"phi values must be >= 0, got {phi!r}")
        fraction = math.exp(-params.beta * p)
        points.append(BellCurvePoint(p, fraction, scale * p * fraction))
    return points


def loglog_curve(
    params: LagrangeParams,
    n_values: Sequence[float],
) -> list[tuple[float, float]]:
    """(ln n, ln phi(n)) pairs of the occupancy law.

    The slope tends to -1 for n >> 1 (power-law regime) and bends away from
    linear for n << 1, where phi grows only like ln ln(1/n).
    """
    pairs = []
    for n in n_values:
        v = float(n)
        if not (v > 0 and math.isfinite(v)):
            raise ValueError(f"n values must be > 0, got {n!r}")
        pairs.append((math.log(v), math.log(phi_unnormalized(v, params))))
    return pairs


def theoretical_occupancy_spectrum(occupied_boxes: int) -> OccupancySpectrum:
    """Occupancy-law spectrum f(n) = ln(1+1/n)/ln(M+1) over n = 1..M."""
    m = _require_count(occupied_boxes, "occupied_boxes", 1)
    norm = math.log(m + 1.0)
    entries = tuple((n, math.log1p(1.0 / n) / norm) for n in range(1, m + 1))
    return OccupancySpectrum(
        source=SpectrumSource.THEORY, entries=entries, normalizer=1.0
    )

"""Exact enumeration and uniform sampling over particle-in-box microstates.

A microstate is a weak composition of P particles into N ordered boxes.
This module is the brute-force side of the library: it enumerates every
composition, tallies exact occupancy censuses, evaluates closed-form
per-box occupancy probabilities as exact rationals, and draws uniform
microstates through the stars-and-bars bijection with counter-based
per-chunk random streams so results are reproducible regardless of how
the work is parallelized.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import numpy as np

from .theory import OccupancySpectrum, SpectrumSource, omega

# Keep exhaustive enumeration at desk scale; the closed-form rational
# probabilities cover larger instances.
ENUMERATION_GUARD = 10**8

# Rows per internal generation batch (bounds memory at wide N+P).
_BATCH_ELEMENTS = 1 << 20

Microstate = tuple[int, ...]

__all__ = [
    "Microstate",
    "SamplerConfig",
    "DivergenceReport",
    "EnumerationGuardError",
    "ENUMERATION_GUARD",
    "enumerate_microstates",
    "occupancy_census",
    "exact_box_occupancy_probability",
    "exact_occupancy_spectrum",
    "iter_sample_blocks",
    "sample_uniform_microstates",
    "per_box_distribution",
    "compare_to_theory",
]


class EnumerationGuardError(ValueError):
    """Raised when an instance is too large to enumerate exhaustively."""

    def __init__(self, particles: int, boxes: int, count: int):
        self.count = count
        super().__init__(
            f"omega({particles},{boxes}) = {count} microstates exceeds the "
            f"enumeration guard of {ENUMERATION_GUARD}"
        )


@dataclass(frozen=True)
class SamplerConfig:
    """Reproducibility contract for uniform microstate draws.

    The draw index space is cut into blocks of `chunk_size`; block b is
    generated from a Philox stream keyed by (seed, b). The result is a pure
    function of (draws, seed, chunk_size), whatever the thread count.
    """

    draws: int
    seed: int
    chunk_size: int = 65536

    def __post_init__(self):
        if not isinstance(self.draws, int) or self.draws < 1:
            raise ValueError(f"draws must be a positive integer, got {self.draws!r}")
        if not isinstance(self.seed, int) or not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")
        if not isinstance(self.chunk_size, int) or self.chunk_size < 1:
            raise ValueError(f"chunk_size must be >= 1, got {self.chunk_size!r}")


@dataclass(frozen=True)
class DivergenceReport:
    """Gap between an empirical spectrum and a reference spectrum."""

    deviations: tuple[tuple[int, float], ...]
    max_abs_deviation: float
    chi_square: float


def enumerate_microstates(particles: int, boxes: int) -> Iterator[Microstate]:
    """Yield every weak composition of P into N parts in lexicographic order.

    Refuses instances with more than ENUMERATION_GUARD microstates; the
    error carries the exact count.
    """
    total = omega(particles, boxes)
    if total > ENUMERATION_GUARD:
        raise EnumerationGuardError(particles, boxes, total)
    if boxes == 1:
        yield (particles,)
        return
    state = [0] * (boxes - 1) + [particles]
    while True:
        yield tuple(state)
        # Rightmost nonzero entry; none, or all mass at position 0, ends it.
        last = boxes - 1
        while last >= 0 and state[last] == 0:
            last -= 1
        if last <= 0:
            return
        # Increment the position left of it, dump the rest to the tail.
        j = boxes - 2 if last == boxes - 1 else last - 1
        moved = sum(state[j + 1 :])
        state[j] += 1
        for i in range(j + 1, boxes):
            state[i] = 0
        state[boxes - 1] = moved - 1


def occupancy_census(particles: int, boxes: int) -> OccupancySpectrum:
    """Exact occupied-incidence census over all microstates.

    Counts, over every (microstate, box) pair, how often each occupancy
    n >= 1 occurs. Counts and normalizer are integers, so frequencies are
    exact rationals.
    """
    if particles < 1:
        raise ValueError("census needs at least one particle")
    counts: Counter[int] = Counter()
    for state in enumerate_microstates(particles, boxes):
        for occ in state:
            if occ >= 1:
                counts[occ] += 1
    entries = tuple(sorted(counts.items()))
    return OccupancySpectrum(
        source=SpectrumSource.EXACT_CENSUS,
        entries=entries,
        normalizer=sum(counts.values()),
    )


def exact_box_occupancy_probability(n: int, particles: int, boxes: int) -> Fraction:
    """Probability that a given box holds exactly n particles, as a Fraction.

    Fixing n particles in one box leaves omega(P-n, N-1) arrangements, so
    the probability is omega(P-n, N-1) / omega(P, N); the sum over
    n = 0..P is exactly 1.
    """
    if not isinstance(n, (int, np.integer)) or not 0 <= n <= particles:
        raise ValueError(f"occupancy must lie in 0..{particles}, got {n!r}")
    if n == particles:
        return Fraction(1, omega(particles, boxes))
    if boxes < 2:
        raise ValueError("a single box always holds all particles")
    return Fraction(omega(particles - int(n), boxes - 1), omega(particles, boxes))


def exact_occupancy_spectrum(particles: int, boxes: int) -> OccupancySpectrum:
    """Closed-form equivalent of occupancy_census, no enumeration needed.

    Every box is equivalent, so the incidence count of occupancy n is
    N * omega(P-n, N-1).
    """
    if particles < 1:
        raise ValueError("spectrum needs at least one particle")
    if boxes == 1:
        entries = ((particles, 1),)
    else:
        counts = {}
        for n in range(1, particles + 1):
            c = boxes * omega(particles - n, boxes - 1)
            if c > 0:
                counts[n] = c
        entries = tuple(sorted(counts.items()))
    return OccupancySpectrum(
        source=SpectrumSource.EXACT_CENSUS,
        entries=entries,
        normalizer=sum(w for _, w in entries),
    )


def _block_rows(config: SamplerConfig, block: int) -> int:
    start = block * config.chunk_size
    return min(config.chunk_size, config.draws - start)


def _block_occupancies(
    particles: int, boxes: int, config: SamplerConfig, block: int
) -> np.ndarray:
    """Occupancy matrix (rows, boxes) for one block of draws.

    Draws a uniform (N-1)-subset of the N+P-1 star/bar slots per row (the
    indices of the smallest i.i.d. uniforms); consecutive bar gaps are the
    box occupancies. The Philox stream is keyed by (seed, block), so the
    block's content does not depend on which thread produces it.
    """
    rows = _block_rows(config, block)
    if boxes == 1:
        return np.full((rows, 1), particles, dtype=np.int64)
    slots = boxes + particles - 1
    bars = boxes - 1
    rng = np.random.Generator(
        np.random.Philox(key=np.array([config.seed, block], dtype=np.uint64))
    )
    out = np.empty((rows, boxes), dtype=np.int64)
    done = 0
    batch_rows = max(1, _BATCH_ELEMENTS // slots)
    while done < rows:
        take = min(batch_rows, rows - done)
        u = rng.random((take, slots))
        chosen = np.argsort(u, axis=1, kind="stable")[:, :bars]
        chosen.sort(axis=1)
        out[done : done + take] = np.diff(chosen, axis=1, prepend=-1, append=slots) - 1
        done += take
    return out


def iter_sample_blocks(
    particles: int, boxes: int, config: SamplerConfig
) -> Iterator[np.ndarray]:
    """Yield per-block occupancy matrices in block order."""
    if particles < 1:
        raise ValueError("sampling needs at least one particle")
    if boxes < 1:
        raise ValueError("sampling needs at least one box")
    n_blocks = -(-config.draws // config.chunk_size)
    for block in range(n_blocks):
        yield _block_occupancies(particles, boxes, config, block)


def sample_uniform_microstates(
    particles: int,
    boxes: int,
    config: SamplerConfig,
    threads: int = 1,
) -> OccupancySpectrum:
    """Empirical occupied-incidence spectrum of uniform microstate draws.

    Each draw is uniform over all omega(P, N) weak compositions. Blocks may
    be generated concurrently (`threads`); the aggregated counts are
    bit-identical for a fixed SamplerConfig regardless of thread count.
    """
    if particles < 1:
        raise ValueError("sampling needs at least one particle")
    if boxes < 1:
        raise ValueError("sampling needs at least one box")
    n_blocks = -(-config.draws // config.chunk_size)

    def tally(block: int) -> np.ndarray:
        occ = _block_occupancies(particles, boxes, config, block)
        return np.bincount(occ.ravel(), minlength=particles + 1)

    totals = np.zeros(particles + 1, dtype=np.int64)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for counts in pool.map(tally, range(n_blocks)):
                totals += counts
    else:
        for block in range(n_blocks):
            totals += tally(block)

    entries = tuple(
        (n, int(totals[n])) for n in range(1, particles + 1) if totals[n] > 0
    )
    return OccupancySpectrum(
        source=SpectrumSource.MONTE_CARLO,
        entries=entries,
        normalizer=int(totals[1:].sum()),
    )


def per_box_distribution(
    spectrum: OccupancySpectrum, draws: int, boxes: int, particles: int
) -> np.ndarray:
    """Empirical per-box occupancy probabilities over n = 0..P.

    Rebuilds the zero-occupancy mass from the total (draw, box) incidence
    count, which the occupied-only spectrum leaves implicit.
    """
    total = draws * boxes
    probs = np.zeros(particles + 1)
    occupied = 0
    for n, weight in spectrum.entries:
        if n > particles:
            raise ValueError(f"occupancy {n} exceeds particle count {particles}")
        probs[n] = weight
        occupied += weight
    if occupied > total:
        raise ValueError("spectrum holds more incidences than draws*boxes")
    probs[0] = total - occupied
    return probs / total


def compare_to_theory(
    empirical: OccupancySpectrum, theory: OccupancySpectrum
) -> DivergenceReport:
    """Per-occupancy gaps (empirical minus reference), their max, and a
    chi-square statistic scaled by the empirical normalizer.

    The reference must be strictly positive wherever the empirical spectrum
    has mass.
    """
    emp = {n: float(w) / float(empirical.normalizer) for n, w in empirical.entries}
    ref = {n: float(w) / float(theory.normalizer) for n, w in theory.entries}
    support = sorted(set(emp) | set(ref))
    if not support:
        raise ValueError("nothing to compare: empty supports")
    deviations = []
    chi = 0.0
    for n in support:
        fe = emp.get(n, 0.0)
        ft = ref.get(n, 0.0)
        if ft <= 0.0 and fe > 0.0:
            raise ValueError(
                f"reference spectrum has no mass at occupancy {n} "
                "but the empirical spectrum does"
            )
        deviations.append((n, fe - ft))
        if ft > 0.0:
            chi += (fe - ft) ** 2 / ft
    chi *= float(empirical.normalizer)
    max_abs = max(abs(d) for _, d in deviations)
    return DivergenceReport(
        deviations=tuple(deviations),
        max_abs_deviation=max_abs,
        chi_square=chi,
    )

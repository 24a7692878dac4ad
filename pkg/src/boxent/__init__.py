"""boxent: maximum-entropy occupancy statistics for particles in boxes.

Closed-form occupancy laws and their rank/digit/bell regimes
(:mod:`boxent.theory`), exact enumeration and reproducible uniform
sampling of microstates (:mod:`boxent.microstates`), and empirical
first-digit / rank-frequency fitting (:mod:`boxent.statfit`), wired
together by the ``boxent`` command line tool (:mod:`boxent.cli`).
"""

from .theory import (
    BellCurvePoint,
    LagrangeParams,
    OccupancySpectrum,
    RankDistribution,
    SpectrumSource,
    SystemShape,
    bell_curve,
    bell_mode,
    bell_weight,
    benford_frequency,
    boltzmann_entropy_exact,
    boltzmann_entropy_stirling,
    gibbs_shannon_entropy,
    iter_rank_frequencies,
    loglog_curve,
    occupancy_frequency,
    occupied_normalizer,
    omega,
    pareto_split,
    phi_unnormalized,
    planck_occupancy,
    rank_distribution,
    theoretical_occupancy_spectrum,
    zipf_ratio,
)
from .microstates import (
    DivergenceReport,
    EnumerationGuardError,
    Microstate,
    SamplerConfig,
    compare_to_theory,
    enumerate_microstates,
    exact_box_occupancy_probability,
    exact_occupancy_spectrum,
    iter_sample_blocks,
    occupancy_census,
    per_box_distribution,
    sample_uniform_microstates,
)
from .statfit import (
    DigitHistogram,
    FitReport,
    SlopeFit,
    benford_expected,
    benford_test,
    count_tokens,
    digit_histogram,
    first_significant_digit,
    loglog_slope_fit,
    power_law_fit,
    rank_distribution_from_counts,
    rank_frequency_of_tokens,
    zipf_check,
)

__version__ = "0.1.0"

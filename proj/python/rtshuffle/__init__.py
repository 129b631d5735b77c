"""Random-transposition shuffle: exact spectral total variation, the limit
profile d_TV(Poiss(1 + e^{-2c}), Poiss(1)), permutation statistics and a
Monte Carlo simulator.

Partitions are tuples of positive ints in weakly decreasing order. Exact
rationals come back as fractions.Fraction and big integers as int.
"""

from ._core import (
    ArgumentError,
    SizeLimitError,
    __version__,
    character_ratio,
    class_size,
    conjugate,
    convolution_oracle,
    count_small_cycle_perms,
    dimension,
    eigenvalue,
    empirical_fixed_point_hist,
    enumerate_partitions,
    exact_tv_fourier,
    extend_weights,
    fc_eval,
    fixed_point_law,
    hook_lengths,
    lemma43_check,
    limit_profile,
    mixed_expectation,
    mixing_time_steps,
    mn_character,
    partition_count,
    poisson_overlap,
    poisson_tv,
    profile_curve,
    prop37_margin,
    qcycle_probability,
    remainder_bound,
    series_vs_closed_form,
    simulate_walk,
    smallest_truncation,
    tj_eval,
    truncated_tv,
    verify,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]

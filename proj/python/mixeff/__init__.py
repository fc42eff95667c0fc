"""Signed-rank versus t test efficiency under Gaussian mixture alternatives."""

from ._core import (
    DegenerateSampleError,
    DomainError,
    Error,
    InsufficientDataError,
    MixtureParams,
    PreconditionError,
    SearchOverflowError,
    TiesUnsupportedError,
    __version__,
    are,
    are_small_shift_limit,
    cdf,
    dominance_boundary,
    dominance_grid,
    empirical_are,
    estimate_power,
    identity_check,
    min_sample_size,
    moments,
    null_counts,
    pdf,
    power_ratio_surface,
    sample,
    signed_rank_statistic,
    t_test,
    u_statistic,
    wilcoxon_test,
    xi_t,
    xi_w,
    xi_w_slope_at_null,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]

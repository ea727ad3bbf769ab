"""Low/high frequency splitting and the estimates built on it."""

from .projections import (
    GrowthRateFit,
    LowFrequencyGrowth,
    SplitParams,
    fit_growth_rate,
    fit_low_freq_rate,
    growth_estimate,
    high_freq_bound,
    high_pass,
    low_freq_growth,
    low_pass,
    low_pass_mask,
    split_norms,
)

__all__ = [
    "SplitParams",
    "low_pass",
    "high_pass",
    "low_pass_mask",
    "split_norms",
    "high_freq_bound",
    "low_freq_growth",
    "LowFrequencyGrowth",
    "fit_low_freq_rate",
    "fit_growth_rate",
    "growth_estimate",
    "GrowthRateFit",
]

"""Cohort-level analytics over many author profiles."""

from .curves import METRICS, RankCurve, rank_curve, smooth_curve, typical_value
from .smoothing import lowess
from .stats import (
    FIB_BIN_EDGES,
    FIB_BIN_LABELS,
    FibBinnedDistribution,
    YearlyAuthorStats,
    author_count_histogram,
    binned_shares_by_year,
    distinct_publications,
    fib_bin,
    fib_bin_index,
    field_histograms,
    hellinger,
    hellinger_matrix,
    yearly_stats,
)
from .synth import ABUSE_PATTERNS, SynthSpec, synth_cohort

__all__ = [
    "ABUSE_PATTERNS",
    "FIB_BIN_EDGES",
    "FIB_BIN_LABELS",
    "FibBinnedDistribution",
    "METRICS",
    "RankCurve",
    "SynthSpec",
    "YearlyAuthorStats",
    "author_count_histogram",
    "binned_shares_by_year",
    "distinct_publications",
    "fib_bin",
    "fib_bin_index",
    "field_histograms",
    "hellinger",
    "hellinger_matrix",
    "lowess",
    "rank_curve",
    "smooth_curve",
    "synth_cohort",
    "typical_value",
    "yearly_stats",
]

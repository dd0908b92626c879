"""Fibonacci-adjusted bibliometric indicators.

Authors receive ``1/F_rank`` credit for each paper according to their byline
rank, so the two leading authors get a whole credit and supporting authors
progressively less.  The package computes the adjusted indicators (P', C',
h', T') next to the usual P, C and h, derives T' benchmarks, and runs cohort
analytics over curated author profiles.
"""

from .estimators import FibonacciBinner, FibonacciIndicators, LowessSmoother, ProfileCurator
from .exceptions import (
    FibimetricsError,
    IngestError,
    SnapshotError,
    UnboundedEndorsementError,
    UndefinedIndicatorError,
    UnresolvedPositionError,
)
from .fibcore import (
    BenchmarkModel,
    FibCreditTable,
    build_credit_table,
    credit_for_rank,
    default_table,
    derive_benchmarks,
    endorsement_table,
    reciprocal_fibonacci_constant,
)
from .indicators import (
    IndicatorSet,
    c_prime,
    cumulative_t_prime,
    h_index,
    h_prime,
    indicator_set,
    p_prime,
    percentage_difference,
    t_prime,
)
from .records import AuthorProfile, PublicationRecord, curate, ingest, load, resolve_position, store

__version__ = "0.1.0"

__all__ = [
    "AuthorProfile",
    "BenchmarkModel",
    "FibCreditTable",
    "FibimetricsError",
    "FibonacciBinner",
    "FibonacciIndicators",
    "IndicatorSet",
    "IngestError",
    "LowessSmoother",
    "ProfileCurator",
    "PublicationRecord",
    "SnapshotError",
    "UnboundedEndorsementError",
    "UndefinedIndicatorError",
    "UnresolvedPositionError",
    "build_credit_table",
    "c_prime",
    "credit_for_rank",
    "cumulative_t_prime",
    "curate",
    "default_table",
    "derive_benchmarks",
    "endorsement_table",
    "h_index",
    "h_prime",
    "indicator_set",
    "ingest",
    "load",
    "p_prime",
    "percentage_difference",
    "reciprocal_fibonacci_constant",
    "resolve_position",
    "store",
    "t_prime",
]

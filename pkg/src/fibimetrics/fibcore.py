"""Fibonacci reciprocal credits, the reciprocal Fibonacci constant and the
expected-credit model that yields the T' benchmarks.

Credits are ``1 / F_rank`` with ``F_1 = F_2 = 1``.  Fibonacci numbers are
exact Python integers, so there is no overflow point; ``int / int`` true
division is correctly rounded, which keeps every credit within half an ulp
of the exact reciprocal.  Credits below :data:`FLUSH_BELOW` are flushed to
``0.0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .exceptions import UnboundedEndorsementError

#: Credits smaller than this are reported as exactly zero (rank >= 88).
FLUSH_BELOW = 1e-18

#: Default summation tolerance for the reciprocal Fibonacci constant.
DEFAULT_TOLERANCE = 1e-18

#: Benchmarks as labelled in the endorsement table.
UPPER_BENCHMARK = 0.72
LOWER_BENCHMARK = 0.66
BENCHMARK_LABELS = {UPPER_BENCHMARK: "Upper", LOWER_BENCHMARK: "Lower"}


def iter_fibonacci() -> Iterator[int]:
    """Yield F_1, F_2, F_3, ... = 1, 1, 2, 3, ... indefinitely."""
    a, b = 1, 1
    while True:
        yield a
        a, b = b, a + b


@lru_cache(maxsize=1024)
def fibonacci(n: int) -> int:
    """Return the exact n-th Fibonacci number (1-based, ``F_1 = F_2 = 1``)."""
    if n < 1:
        raise ValueError(f"Fibonacci index must be >= 1, got {n}")
    a, b = 1, 1
    for _ in range(n - 1):
        a, b = b, a + b
    return a


def _reciprocal(f: int) -> float:
    c = 1 / f
    return 0.0 if c < FLUSH_BELOW else c


def _sum_reciprocals(tolerance: float) -> tuple[float, int]:
    terms = []
    for f in iter_fibonacci():
        term = 1 / f
        if term < tolerance:
            break
        terms.append(term)
    return math.fsum(terms), len(terms)


def reciprocal_fibonacci_constant(tolerance: float = DEFAULT_TOLERANCE) -> float:
    """Sum ``1/F_i`` until the next term drops below ``tolerance``."""
    if not tolerance > 0:
        raise ValueError(f"tolerance must be > 0, got {tolerance}")
    return _sum_reciprocals(tolerance)[0]


@dataclass(frozen=True)
class FibCreditTable:
    """Precomputed reciprocal credits for ranks ``1..max_rank``.

    ``credits[0]`` is the credit of rank 1.  Ranks beyond the table are
    computed on demand by :meth:`credit`, so a table of any extent returns
    identical values for the ranks it shares with another.
    """

    max_rank: int
    credits: tuple[float, ...]
    psi: float
    tolerance: float
    psi_terms: int

    def credit(self, rank: int) -> float:
        if isinstance(rank, bool) or not isinstance(rank, int) or rank < 1:
            raise ValueError(f"rank must be a positive integer, got {rank!r}")
        if rank <= self.max_rank:
            return self.credits[rank - 1]
        return _reciprocal(fibonacci(rank))

    def partial_sum(self, n: int) -> float:
        """Total credit handed out by a byline of ``n`` authors."""
        return math.fsum(self.credit(r) for r in range(1, n + 1))

    def __len__(self) -> int:
        return self.max_rank


def build_credit_table(
    max_rank: int = 100, tolerance: float = DEFAULT_TOLERANCE
) -> FibCreditTable:
    """Build a :class:`FibCreditTable` covering ranks ``1..max_rank``.

    Raises
    ------
    ValueError
        If ``max_rank < 2`` or ``tolerance <= 0``.
    """
    if isinstance(max_rank, bool) or not isinstance(max_rank, int) or max_rank < 2:
        raise ValueError(f"max_rank must be an integer >= 2, got {max_rank!r}")
    if not tolerance > 0:
        raise ValueError(f"tolerance must be > 0, got {tolerance}")
    credits = []
    for rank, f in enumerate(iter_fibonacci(), start=1):
        if rank > max_rank:
            break
        credits.append(_reciprocal(f))
    psi, n_terms = _sum_reciprocals(tolerance)
    return FibCreditTable(
        max_rank=max_rank,
        credits=tuple(credits),
        psi=psi,
        tolerance=tolerance,
        psi_terms=n_terms,
    )


@lru_cache(maxsize=1)
def default_table() -> FibCreditTable:
    """Shared immutable table used when callers do not supply one."""
    return build_credit_table()


def credit_for_rank(table: FibCreditTable, rank: int) -> float:
    """Return ``1/F_rank``; ranks past the table extent are computed on demand."""
    return table.credit(rank)


@dataclass(frozen=True)
class BenchmarkModel:
    """Expected Fibonacci-adjusted credit under the credit-proportional model.

    ``combined_expectation`` merges the two leading ranks into one outcome
    (normaliser ``psi - 1``); ``separated_expectation`` keeps them distinct
    (normaliser ``psi``).  ``practical_benchmark`` is their midpoint.
    """

    combined_expectation: float
    separated_expectation: float
    practical_benchmark: float
    reciprocal_square_sum: float
    terms_used: int
    psi: float


def derive_benchmarks(
    terms: int = 10946, tolerance: float = DEFAULT_TOLERANCE
) -> BenchmarkModel:
    """Derive the T' benchmarks from the first ``terms`` distinct credits.

    The distinct credits are ``{1, 1/2, 1/3, 1/5, ...}``, i.e. the credits of
    ranks ``2..terms+1``.  Flushed credits contribute nothing, so summation
    stops at the first zero.
    """
    if isinstance(terms, bool) or not isinstance(terms, int) or terms < 3:
        raise ValueError(f"terms must be an integer >= 3, got {terms!r}")
    squares = []
    fib = iter_fibonacci()
    next(fib)  # rank 1 merges with rank 2
    for _, f in zip(range(terms), fib):
        c = _reciprocal(f)
        if c == 0.0:
            break
        squares.append(c * c)
    square_sum = math.fsum(squares)
    psi = reciprocal_fibonacci_constant(tolerance)
    combined = square_sum / (psi - 1.0)
    separated = (1.0 + square_sum) / psi
    return BenchmarkModel(
        combined_expectation=combined,
        separated_expectation=separated,
        practical_benchmark=(combined + separated) / 2.0,
        reciprocal_square_sum=square_sum,
        terms_used=terms,
        psi=psi,
    )


def _check_benchmark(benchmark: float) -> None:
    if not 0.0 < benchmark < 1.0:
        raise ValueError(f"benchmark must lie in (0, 1), got {benchmark}")


def endorsed_publications(
    benchmark: float, leading_count: int, position: int
) -> float:
    """Position-``position`` papers that ``leading_count`` leading papers
    can absorb while keeping ``T' >= benchmark``.

    Solves ``(leading + k/F_r) / (leading + k) = benchmark`` for ``k``.

    Raises
    ------
    UnboundedEndorsementError
        When ``benchmark <= 1/F_position``; any number of such papers keeps
        T' above the benchmark.
    """
    _check_benchmark(benchmark)
    if leading_count < 1:
        raise ValueError(f"leading_count must be >= 1, got {leading_count}")
    credit = _reciprocal(fibonacci(position))
    gap = benchmark - credit
    if gap <= 0:
        raise UnboundedEndorsementError(
            f"benchmark {benchmark} does not exceed the credit {credit:.6g} "
            f"of position {position}"
        )
    return leading_count * (1.0 - benchmark) / gap


@dataclass(frozen=True)
class EndorsementRow:
    position: int
    fibonacci: int
    endorsed: float  # math.inf when unbounded

    @property
    def unbounded(self) -> bool:
        return math.isinf(self.endorsed)


@dataclass(frozen=True)
class EndorsementTable:
    benchmark: float
    leading_count: int
    rows: tuple[EndorsementRow, ...]
    limit: float

    @property
    def label(self) -> str:
        return BENCHMARK_LABELS.get(self.benchmark, "Custom")

    def as_dict(self) -> dict[int, float]:
        return {row.position: row.endorsed for row in self.rows}


def endorsement_table(
    benchmark: float, leading_count: int = 3, max_position: int = 34
) -> EndorsementTable:
    """Endorsed supporting-role papers per position ``3..max_position``.

    Rows where the benchmark does not exceed the position credit are
    reported with ``endorsed = inf``.  ``limit`` is the value as the
    position grows without bound, ``leading * (1 - b) / b``.
    """
    _check_benchmark(benchmark)
    if leading_count < 1:
        raise ValueError(f"leading_count must be >= 1, got {leading_count}")
    rows = []
    for position in range(3, max_position + 1):
        try:
            k = endorsed_publications(benchmark, leading_count, position)
        except UnboundedEndorsementError:
            k = math.inf
        rows.append(EndorsementRow(position, fibonacci(position), k))
    limit = leading_count * (1.0 - benchmark) / benchmark
    return EndorsementTable(benchmark, leading_count, tuple(rows), limit)


def truncate_decimals(value: float, places: int = 2) -> float:
    """Truncate toward zero at ``places`` decimals (the endorsement table's
    display convention).  A 1e-9 guard absorbs representation error such
    as ``1.16 -> 1.1599999``."""
    if math.isinf(value):
        return value
    scale = 10**places
    return math.floor(value * scale + 1e-9) / scale


def format_endorsement(value: float, places: int = 2) -> str:
    if math.isinf(value):
        return "unbounded"
    return f"{truncate_decimals(value, places):.{places}f}"

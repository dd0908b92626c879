"""Participation and Fibonacci-adjusted indicators for a single author.

P and C count every paper and citation in full.  P' and C' weight each
paper by the reciprocal Fibonacci credit of the author's byline rank.  h'
is the real-valued fixed point of the credit-weighted step function and
T' = P'/P.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .exceptions import UndefinedIndicatorError, UnresolvedPositionError
from .fibcore import FibCreditTable, default_table
from .records.model import AuthorProfile, PublicationRecord

INDICATOR_KEYS = ("P", "P_prime", "C", "C_prime", "h", "h_prime", "T_prime")


def _credits(records: Iterable[PublicationRecord], table: FibCreditTable | None) -> list[float]:
    table = table or default_table()
    out = []
    for record in records:
        if record.position is None:
            raise UnresolvedPositionError(
                f"record {record.publication_id!r} has no resolved byline position"
            )
        out.append(table.credit(record.position))
    return out


def p_prime(records: Sequence[PublicationRecord], table: FibCreditTable | None = None) -> float:
    """Publications by Fibonacci-adjusted contribution, ``sum 1/F_R(k)``."""
    return math.fsum(_credits(records, table))


def c_prime(records: Sequence[PublicationRecord], table: FibCreditTable | None = None) -> float:
    """Citations by Fibonacci-adjusted contribution, ``sum C_k/F_R(k)``."""
    credits = _credits(records, table)
    return math.fsum(r.citations * w for r, w in zip(records, credits))


def h_index(records: Sequence[PublicationRecord]) -> int:
    citations = sorted((r.citations for r in records), reverse=True)
    return sum(1 for i, c in enumerate(citations, start=1) if c >= i)


def fixed_point_h(adjusted: Sequence[float], weights: Sequence[float]) -> float:
    """``sup{x >= 0 : sum(w_k for a_k >= x) >= x}`` by a single sorted scan.

    Records are visited in descending ``a`` (larger ``w`` first on ties);
    the answer is the largest ``min(cumulative w, a)`` along the way.
    """
    order = sorted(range(len(adjusted)), key=lambda k: (-adjusted[k], -weights[k]))
    best = 0.0
    running = 0.0
    for k in order:
        running += weights[k]
        best = max(best, min(running, adjusted[k]))
    return best


def h_prime(records: Sequence[PublicationRecord], table: FibCreditTable | None = None) -> float:
    """Fibonacci-adjusted h-index.

    With adjusted citations ``a_k = C_k * w_k`` and credits ``w_k = 1/F_R(k)``,
    h' is the largest ``x`` such that the credits of papers with ``a_k >= x``
    add up to at least ``x``.  Returns 0.0 for no records.
    """
    weights = _credits(records, table)
    adjusted = [r.citations * w for r, w in zip(records, weights)]
    return fixed_point_h(adjusted, weights)


def t_prime(records: Sequence[PublicationRecord], table: FibCreditTable | None = None) -> float:
    """Share of participated publications credited by contribution, P'/P.

    Raises
    ------
    UndefinedIndicatorError
        For an empty record list; T' has no meaningful value there.
    """
    if not records:
        raise UndefinedIndicatorError("T' is undefined for an author with no publications")
    return p_prime(records, table) / len(records)


def percentage_difference(x: float, y: float, *, return_flag: bool = False):
    """Symmetric percentage difference ``200 |x - y| / (x + y)``.

    ``(0, 0)`` yields 0.0; pass ``return_flag=True`` to receive
    ``(value, degenerate)`` and detect that case.
    """
    if x < 0 or y < 0:
        raise ValueError(f"percentage difference needs non-negative inputs, got {x}, {y}")
    total = x + y
    degenerate = total == 0
    # dividing first keeps the ratio <= 1 under rounding
    value = 0.0 if degenerate else 200.0 * (abs(x - y) / total)
    return (value, degenerate) if return_flag else value


@dataclass(frozen=True)
class IndicatorSet:
    P: int
    P_prime: float
    C: int
    C_prime: float
    h: int
    h_prime: float
    T_prime: float | None
    as_of_year: int | None = None

    def to_dict(self) -> dict[str, float | int | None]:
        return {key: getattr(self, key) for key in INDICATOR_KEYS}

    def percentage_differences(self) -> dict[str, float]:
        return {
            "pdiff_P": percentage_difference(self.P, self.P_prime),
            "pdiff_C": percentage_difference(self.C, self.C_prime),
            "pdiff_h": percentage_difference(self.h, self.h_prime),
        }


def _records_until(profile: AuthorProfile, as_of_year: int | None) -> list[PublicationRecord]:
    if as_of_year is None:
        return list(profile.records)
    return [r for r in profile.records if r.year is not None and r.year <= as_of_year]


def indicators_for_records(
    records: Sequence[PublicationRecord],
    table: FibCreditTable | None = None,
    as_of_year: int | None = None,
) -> IndicatorSet:
    table = table or default_table()
    if not records:
        return IndicatorSet(0, 0.0, 0, 0.0, 0, 0.0, None, as_of_year)
    weights = _credits(records, table)
    adjusted = [r.citations * w for r, w in zip(records, weights)]
    P = len(records)
    P_prime = math.fsum(weights)
    return IndicatorSet(
        P=P,
        P_prime=P_prime,
        C=sum(r.citations for r in records),
        C_prime=math.fsum(adjusted),
        h=h_index(records),
        h_prime=fixed_point_h(adjusted, weights),
        T_prime=P_prime / P,
        as_of_year=as_of_year,
    )


def indicator_set(
    profile: AuthorProfile,
    table: FibCreditTable | None = None,
    as_of_year: int | None = None,
) -> IndicatorSet:
    """All seven indicators over the profile's records up to ``as_of_year``."""
    return indicators_for_records(_records_until(profile, as_of_year), table, as_of_year)


def cumulative_t_prime(
    profile: AuthorProfile, table: FibCreditTable | None = None
) -> list[tuple[int, float]]:
    """Running T' for every calendar year from first to last publication.

    Years without new papers repeat the previous value.
    """
    table = table or default_table()
    dated = [r for r in profile.records if r.year is not None]
    if not dated:
        raise UndefinedIndicatorError(
            f"cumulative T' is undefined for {profile.author_id!r}: no dated records"
        )
    credit_by_year: dict[int, list[float]] = {}
    for record, w in zip(dated, _credits(dated, table)):
        credit_by_year.setdefault(record.year, []).append(w)
    first, last = min(credit_by_year), max(credit_by_year)
    series = []
    credits: list[float] = []
    for year in range(first, last + 1):
        credits.extend(credit_by_year.get(year, ()))
        series.append((year, math.fsum(credits) / len(credits)))
    return series

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fibimetrics.exceptions import UndefinedIndicatorError, UnresolvedPositionError
from fibimetrics.indicators import (
    INDICATOR_KEYS,
    c_prime,
    cumulative_t_prime,
    fixed_point_h,
    h_index,
    h_prime,
    indicator_set,
    p_prime,
    percentage_difference,
    t_prime,
)
from fibimetrics.records import PublicationRecord

from conftest import make_profile


def records(positions, citations=None, years=None):
    return list(make_profile(positions, citations, years).records)


def brute_h(citations):
    return max(h for h in range(len(citations) + 1) if sum(c >= h for c in citations) >= h)


def bisect_h_prime(adjusted, weights, iters=200):
    """sup{x >= 0 : f(x) >= x}; f(x) - x is non-increasing so the
    predicate flips once."""
    def ok(x):
        return sum(w for a, w in zip(adjusted, weights) if a >= x) >= x
    lo, hi = 0.0, max([0.0, *adjusted]) + 1.0
    for _ in range(iters):
        mid = (lo + hi) / 2
        if ok(mid):
            lo = mid
        else:
            hi = mid
    return lo


# --- examples --------------------------------------------------------------

def test_john_doe_indicators(john_doe, table):
    recs = list(john_doe.records)
    assert p_prime(recs, table) == pytest.approx(3.7, abs=1e-12)
    assert c_prime(recs, table) == pytest.approx(15.5, abs=1e-12)
    assert h_index(recs) == 3
    assert h_prime(recs, table) == pytest.approx(1.7, abs=1e-12)
    assert t_prime(recs, table) == pytest.approx(0.74, abs=1e-12)


def test_john_doe_indicator_set(john_doe):
    ind = indicator_set(john_doe)
    assert ind.P == 5 and ind.C == 40 and ind.h == 3
    assert ind.P_prime == pytest.approx(3.7, abs=1e-12)
    assert ind.C_prime == pytest.approx(15.5, abs=1e-12)
    assert ind.h_prime == pytest.approx(1.7, abs=1e-12)
    assert ind.T_prime == pytest.approx(0.74, abs=1e-12)
    assert tuple(ind.to_dict()) == INDICATOR_KEYS


def test_empty_records():
    assert p_prime([]) == 0.0
    assert c_prime([]) == 0.0
    assert h_index([]) == 0
    assert h_prime([]) == 0.0
    with pytest.raises(UndefinedIndicatorError):
        t_prime([])


def test_all_leading_positions():
    assert p_prime(records([1] * 1000)) == 1000.0
    recs = records([1, 2, 1, 2], [5, 0, 3, 8])
    assert t_prime(recs) == 1.0
    assert c_prime(recs) == 16.0


def test_zero_and_single_citations():
    assert c_prime(records([1, 3, 5], [0, 0, 0])) == 0.0
    assert c_prime(records([1], [7])) == 7.0


def test_h_index_examples():
    assert h_index(records([1] * 5, [5] * 5)) == 5
    assert h_index(records([1] * 5, [5] * 5)) == brute_h([5] * 5)


def test_h_prime_sole_author():
    assert h_prime(records([1, 1, 1], [3, 3, 3])) == 3.0


def test_h_prime_walkthrough():
    # sorted a = [5, 4.5, 4, 1, 1], w = [0.2, 0.5, 1, 1, 1]
    assert fixed_point_h([1, 1, 4, 4.5, 5], [1, 1, 1, 0.5, 0.2]) == pytest.approx(1.7)


def test_t_prime_fractional_endorsement(table):
    k = 6.375
    lead = 3 * table.credit(1)
    assert (lead + k * table.credit(3)) / (3 + k) == pytest.approx(0.66, abs=1e-12)


def test_unresolved_position_names_record():
    rec = PublicationRecord("lost-1", year=2000, raw_authors=("A",))
    with pytest.raises(UnresolvedPositionError, match="lost-1"):
        p_prime([rec])


def test_as_of_year(john_doe):
    early = indicator_set(john_doe, as_of_year=2000)
    assert early.P == 0 and early.P_prime == 0 and early.T_prime is None and early.h_prime == 0
    assert indicator_set(john_doe, as_of_year=2005).to_dict() == indicator_set(john_doe).to_dict()
    mid = indicator_set(john_doe, as_of_year=2003)
    assert mid.P == 3 and mid.P_prime == pytest.approx(3.0)


def test_cumulative_john_doe(john_doe):
    series = cumulative_t_prime(john_doe)
    assert [y for y, _ in series] == list(range(2001, 2006))
    assert [v for _, v in series] == pytest.approx([1.0, 1.0, 1.0, 0.875, 0.74], abs=1e-12)


def test_cumulative_gap_years_and_constant():
    prof = make_profile([3, 3], years=[2000, 2003])
    assert cumulative_t_prime(prof) == [(2000, 0.5), (2001, 0.5), (2002, 0.5), (2003, 0.5)]
    starts_sole = make_profile([1, 5, 4], years=[1999, 2000, 2001])
    assert cumulative_t_prime(starts_sole)[0][1] == 1.0


def test_cumulative_empty_profile():
    with pytest.raises(UndefinedIndicatorError):
        cumulative_t_prime(make_profile([]))


@pytest.mark.parametrize("x, y, expected", [(5, 3.7, 29.89), (40, 15.5, 88.29)])
def test_percentage_difference_examples(x, y, expected):
    assert percentage_difference(x, y) == pytest.approx(expected, abs=0.01)


def test_percentage_difference_degenerate():
    assert percentage_difference(0, 0) == 0.0
    assert percentage_difference(0, 0, return_flag=True) == (0.0, True)
    assert percentage_difference(1, 0, return_flag=True) == (200.0, False)
    with pytest.raises(ValueError):
        percentage_difference(-1, 2)


def test_john_doe_percentage_differences(john_doe):
    diffs = indicator_set(john_doe).percentage_differences()
    assert diffs["pdiff_P"] == pytest.approx(29.8851, abs=1e-4)
    assert diffs["pdiff_C"] == pytest.approx(88.2883, abs=1e-4)
    assert diffs["pdiff_h"] == pytest.approx(55.3191, abs=1e-4)


# --- properties ------------------------------------------------------------

positions = st.integers(1, 40)
record_lists = st.lists(st.tuples(positions, st.integers(0, 300)), max_size=25)


def _records(pairs, offset=0):
    return [
        PublicationRecord(f"r{offset + i}", year=2000, position=p, byline_length=p + 3, citations=c)
        for i, (p, c) in enumerate(pairs)
    ]


@settings(max_examples=500, deadline=None)
@given(record_lists)
def test_dominance(pairs):
    recs = _records(pairs)
    ind = indicator_set(make_profile([]).with_records(recs))
    assert ind.P_prime <= ind.P
    assert ind.C_prime <= ind.C
    assert ind.h_prime <= ind.h
    if ind.P:
        assert 0 < ind.T_prime <= 1


@settings(max_examples=500, deadline=None)
@given(st.lists(st.tuples(positions, st.integers(0, 40)), max_size=8))
def test_h_prime_matches_bisection(pairs):
    recs = _records(pairs)
    weights = [1 / _fib(p) for p, _ in pairs]
    adjusted = [c * w for (_, c), w in zip(pairs, weights)]
    assert h_prime(recs) == pytest.approx(bisect_h_prime(adjusted, weights), abs=1e-9)


def _fib(n):
    a, b = 1, 1
    for _ in range(n - 1):
        a, b = b, a + b
    return a


@settings(max_examples=300, deadline=None)
@given(record_lists, st.lists(st.integers(0, 30), max_size=25))
def test_ornamental_tail_invariance(pairs, extra):
    recs = _records(pairs)
    padded = [
        PublicationRecord(r.publication_id, year=r.year, position=r.position,
                          byline_length=r.byline_length + e, citations=r.citations)
        for r, e in zip(recs, extra + [0] * len(recs))
    ]
    before = indicators_of(recs)
    after = indicators_of(padded)
    assert before == after


def indicators_of(recs):
    return indicator_set(make_profile([]).with_records(recs)).to_dict()


@settings(max_examples=300, deadline=None)
@given(st.lists(st.tuples(st.integers(1, 2), st.integers(0, 100)), min_size=1, max_size=20))
def test_leading_equivalence(pairs):
    recs = _records(pairs)
    ind = indicator_set(make_profile([]).with_records(recs))
    assert ind.P_prime == ind.P
    assert ind.C_prime == ind.C
    assert ind.T_prime == 1.0
    cites = [c for _, c in pairs]
    assert ind.h_prime == pytest.approx(bisect_h_prime(cites, [1.0] * len(cites)), abs=1e-9)


@settings(max_examples=300, deadline=None)
@given(record_lists, st.tuples(positions, st.integers(0, 300)))
def test_monotone_under_added_record(pairs, extra):
    before = indicators_of(_records(pairs))
    after = indicators_of(_records(pairs + [extra]))
    for key in ("P", "P_prime", "C", "C_prime", "h", "h_prime"):
        assert after[key] >= before[key] - 1e-12


@settings(max_examples=500, deadline=None)
@given(st.floats(0, 1e6), st.floats(0, 1e6))
def test_percentage_difference_properties(x, y):
    d = percentage_difference(x, y)
    assert d == percentage_difference(y, x)
    assert 0 <= d <= 200
    if x + y > 0:
        assert d == pytest.approx(200 * (1 - 2 * min(x, y) / (x + y)), abs=1e-9)
    assert percentage_difference(x, x) == 0

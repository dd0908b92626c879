"""Acceptance criteria, one test each.

Every test prints a single ``PASS``/``FAIL`` line with its measured runtime
and budget; the assertion then decides the pytest outcome.  Run with
``pytest tests/test_acceptance.py -v -s`` to see the lines inline (they are
also shown without ``-s``, written past pytest's capture).
"""

import csv
import io
import math
import time
from contextlib import contextmanager
from decimal import Decimal
from fractions import Fraction

import numpy as np
import pytest

from fibimetrics import (
    build_credit_table,
    credit_for_rank,
    curate,
    derive_benchmarks,
    endorsement_table,
    indicator_set,
    ingest,
    percentage_difference,
)
from fibimetrics.cli import main
from fibimetrics.cohort import FIB_BIN_LABELS, fib_bin, hellinger, lowess, synth_cohort
from fibimetrics.fibcore import format_endorsement
from fibimetrics.indicators import fixed_point_h
from fibimetrics.records import AuthorProfile, PublicationRecord

CREDIT_ROW = [1.0000, 1.0000, 0.5000, 0.3333, 0.2000, 0.1250, 0.0769,
              0.0476, 0.0294, 0.0182, 0.0112, 0.0069, 0.0042]

# positions 3..34: (upper 0.72, lower 0.66), truncated to two decimals
ENDORSEMENT_ROWS = {
    3: (3.81, 6.37), 4: (2.17, 3.12), 5: (1.61, 2.21), 6: (1.41, 1.90),
    7: (1.30, 1.74), 8: (1.24, 1.66), 9: (1.21, 1.61), 10: (1.19, 1.58),
    11: (1.18, 1.57), 12: (1.17, 1.56), 13: (1.17, 1.55), 14: (1.17, 1.55),
    **{p: (1.16, 1.54) for p in range(15, 35)},
}
ENDORSEMENT_LIMITS = (1.16, 1.54)

# exact sum of 1/F_i to 400 terms, evaluated to 50 digits
PSI_REFERENCE = 3.3598856662431775531720113029189271796887376941719

FIB_INTERVALS = ["(0,1]", "(1,2]", "(2,3]", "(3,5]", "(5,8]", "(8,13]", "(13,21]",
                "(21,34]", "(34,55]", "(55,89]", "(89,144]", "(144,233]"]


@pytest.fixture
def report(capsys):
    """Yield a recorder; prints one PASS/FAIL line for the criterion."""
    state = {}

    @contextmanager
    def criterion(number, title, budget_s):
        state.update(number=number, title=title, budget=budget_s, ok=False, elapsed=None, detail="")
        yield state
    yield criterion
    if "number" in state:
        elapsed = state["elapsed"]
        ok = state["ok"] and elapsed is not None and elapsed < state["budget"]
        timing = "n/a" if elapsed is None else f"{elapsed * 1e3:.3f} ms"
        with capsys.disabled():
            detail = f" (failed: {state['detail']})" if state["detail"] and not ok else ""
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {state['number']}: {state['title']} "
                  f"[{timing}, budget {state['budget'] * 1e3:g} ms]{detail}")


def timed(fn, repeat=1):
    """Run ``fn`` ``repeat`` times; return (last result, fastest seconds)."""
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return result, best


def exact_fib(n):
    a, b = 1, 1
    for _ in range(n - 1):
        a, b = b, a + b
    return a


@pytest.mark.xfail(
    strict=True,
    reason="reference row lists 0.0042 at rank 13 but 1/233 = 0.004292 rounds to 0.0043; "
    "truncation would fix rank 13 but break rank 10 (0.0182), so no single convention matches",
)
def test_criterion_1_credit_table(report):
    with report(1, "credit_for_rank 1..13 to 4 decimals", 1e-3) as st:
        def run():
            table = build_credit_table(13)
            return [credit_for_rank(table, r) for r in range(1, 14)]
        credits, st["elapsed"] = timed(run, repeat=5)
        rounded = [round(c, 4) for c in credits]
        st["ok"] = rounded == CREDIT_ROW
        st["detail"] = ", ".join(
            f"rank {r}: {got:.4f} vs {want:.4f}"
            for r, (got, want) in enumerate(zip(rounded, CREDIT_ROW), start=1) if got != want
        )
    assert st["ok"], credits
    assert st["elapsed"] < st["budget"]


def test_criterion_1_only_rank_13_deviates():
    table = build_credit_table(13)
    credits = [credit_for_rank(table, r) for r in range(1, 14)]
    mismatched = [r for r, (c, t) in enumerate(zip(credits, CREDIT_ROW), start=1) if round(c, 4) != t]
    assert mismatched == [13]
    assert math.floor(credits[12] * 1e4) / 1e4 == CREDIT_ROW[12]
    assert all(abs(c - t) < 1e-4 for c, t in zip(credits, CREDIT_ROW))


def test_criterion_2_psi(report):
    with report(2, "psi convergence at tolerance 1e-18", 10e-3) as st:
        table, st["elapsed"] = timed(lambda: build_credit_table(13, tolerance=1e-18), repeat=5)
        psi = table.psi
        # independent oracle: exact rational partial sum
        exact = float(sum(Fraction(1, exact_fib(i)) for i in range(1, 400)))
        st["ok"] = (3.3598 < psi < 3.3599 and abs(psi - 3.359885666) < 1e-8
                    and abs(psi - exact) < 1e-12 and abs(exact - PSI_REFERENCE) < 1e-15)
    assert st["ok"], psi
    assert st["elapsed"] < st["budget"]


def test_criterion_3_john_doe(report, john_doe_csv, john_doe_bylines_csv):
    expected = {"P": 5, "P_prime": 3.7, "C": 40, "C_prime": 15.5, "h": 3, "h_prime": 1.7, "T_prime": 0.74}

    def close(ind):
        d = ind.to_dict()
        return all(
            d[k] == v if isinstance(v, int) else abs(d[k] - v) <= 1e-12 for k, v in expected.items()
        )

    with report(3, "John Doe end to end", 0.1) as st:
        def run():
            (direct,) = ingest(john_doe_csv)
            (resolved,), _ = curate(ingest(john_doe_bylines_csv))
            return indicator_set(direct), indicator_set(resolved)
        (direct, resolved), st["elapsed"] = timed(run)
        st["ok"] = close(direct) and close(resolved)
    assert st["ok"], (direct, resolved)
    assert st["elapsed"] < st["budget"]


def _benchmark_checks(model):
    combined, separated = model.combined_expectation, model.separated_expectation
    # exact decimal mean of the two-decimal reported values
    midpoint = (Decimal(f"{combined:.2f}") + Decimal(f"{separated:.2f}")) / 2
    return {
        "square_sum": abs(model.reciprocal_square_sum - 1.42) <= 0.005,
        "combined": abs(combined - 0.60) <= 0.005,
        "separated": abs(separated - 0.72) <= 0.005,
        "midpoint": midpoint == Decimal("0.66"),
    }


@pytest.mark.xfail(
    strict=True,
    reason="the squared-credit sum is 1.42632 (1 + 1/4 + 1/9 + 1/25 + ...), 0.0063 above the "
    "reference 1.42, which is the truncated value; the other three parts pass",
)
def test_criterion_4_benchmarks(report):
    with report(4, "benchmark derivation over 10,946 terms", 1.0) as st:
        model, st["elapsed"] = timed(lambda: derive_benchmarks(10946))
        checks = _benchmark_checks(model)
        st["ok"] = all(checks.values())
        st["detail"] = ", ".join(k for k, v in checks.items() if not v)
    assert st["ok"], (model, checks)
    assert st["elapsed"] < st["budget"]


def test_criterion_4_only_square_sum_deviates():
    model = derive_benchmarks(10946)
    checks = _benchmark_checks(model)
    assert [k for k, v in checks.items() if not v] == ["square_sum"]
    # independent oracle: exact squared reciprocals of the distinct credits
    exact = float(sum(Fraction(1, exact_fib(i) ** 2) for i in range(2, 200)))
    assert model.reciprocal_square_sum == pytest.approx(exact, abs=1e-15)
    assert math.floor(model.reciprocal_square_sum * 100) / 100 == 1.42
    assert abs(model.reciprocal_square_sum - 1.42) < 0.01


def bisection_endorsement(benchmark, leading, position):
    w = 1.0 / exact_fib(position)
    lo, hi = 0.0, 1.0
    while (leading + hi * w) / (leading + hi) > benchmark:
        hi *= 2
    for _ in range(200):
        mid = (lo + hi) / 2
        if (leading + mid * w) / (leading + mid) > benchmark:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def test_criterion_5_endorsement_table(report):
    with report(5, "endorsement table positions 3-34 and limits", 1.0) as st:
        def run():
            return endorsement_table(0.72, 3, 34), endorsement_table(0.66, 3, 34)
        (upper, lower), st["elapsed"] = timed(run)
        failures = []
        for tab, col in ((upper, 0), (lower, 1)):
            for row in tab.rows:
                expected = ENDORSEMENT_ROWS[row.position][col]
                oracle = bisection_endorsement(tab.benchmark, 3, row.position)
                if abs(row.endorsed - expected) > 0.01 or abs(row.endorsed - oracle) > 1e-9:
                    failures.append((tab.benchmark, row.position, row.endorsed, expected, oracle))
                if format_endorsement(row.endorsed) != f"{expected:.2f}":
                    failures.append(("display", tab.benchmark, row.position))
            if abs(tab.limit - ENDORSEMENT_LIMITS[col]) > 0.01:
                failures.append(("limit", tab.benchmark, tab.limit))
        st["ok"] = not failures and [r.position for r in upper.rows] == list(range(3, 35))
    assert st["ok"], failures
    assert st["elapsed"] < st["budget"]


def _fuzzed_profiles(rng, n):
    out = []
    for i in range(n):
        k = int(rng.integers(0, 20))
        positions = rng.integers(1, 60, size=k)
        cites = rng.integers(0, 500, size=k)
        records = [
            PublicationRecord(f"p{i}-{j}", year=2000, position=int(p), byline_length=int(p), citations=int(c))
            for j, (p, c) in enumerate(zip(positions, cites))
        ]
        out.append(AuthorProfile(f"a{i}", "A", records=records))
    return out


def _bisect_fixed_point(a, w):
    lo, hi = 0.0, max([0.0, *a]) + 1.0
    for _ in range(200):
        mid = (lo + hi) / 2
        if sum(wk for ak, wk in zip(a, w) if ak >= mid) >= mid:
            lo = mid
        else:
            hi = mid
    return lo


def test_criterion_6_property_suites(report):
    with report(6, "property suites (a)-(e)", 30.0) as st:
        t0 = time.perf_counter()
        rng = np.random.default_rng(20240601)
        failures = []

        # (a) dominance over 10,000 fuzzed profiles
        profiles = _fuzzed_profiles(rng, 10_000)
        for p in profiles:
            ind = indicator_set(p)
            if not (ind.P_prime <= ind.P and ind.C_prime <= ind.C and ind.h_prime <= ind.h):
                failures.append(("dominance", p.author_id))

        # (b) sort-scan h' against bisection on 1,000 instances of <= 8 records
        for _ in range(1000):
            k = int(rng.integers(0, 9))
            w = [1.0 / exact_fib(int(r)) for r in rng.integers(1, 15, size=k)]
            a = [float(c) * wk for c, wk in zip(rng.integers(0, 60, size=k), w)]
            if abs(fixed_point_h(a, w) - _bisect_fixed_point(a, w)) > 1e-9:
                failures.append(("h_prime", a, w))

        # (c) ornamental-tail invariance on seeded cohorts
        for seed in range(5):
            honest = {p.author_id: indicator_set(p) for p in synth_cohort(n_authors=40, seed=seed)}
            abused = synth_cohort(n_authors=40, seed=seed, abuse="ornamental_tail", abuse_rate=0.6)
            for p in abused:
                if p.author_id in honest and indicator_set(p) != honest[p.author_id]:
                    failures.append(("ornamental", seed, p.author_id))

        # (d) Hellinger symmetry, range and identity on 1,000 random pairs
        for _ in range(1000):
            size = int(rng.integers(1, 15))
            p = rng.integers(0, 30, size=size) + (np.arange(size) == 0)
            q = rng.integers(0, 30, size=int(rng.integers(1, 15)))
            q[0] += 1
            hpq, hqp = hellinger(p, q), hellinger(q, p)
            if hpq != hqp or not 0.0 <= hpq <= 1.0 or hellinger(p, p) != 0.0 or hellinger(p, 3 * p) > 1e-12:
                failures.append(("hellinger", p.tolist(), q.tolist()))

        # (e) percentage difference symmetry and diff(x, x) = 0
        for x, y in rng.uniform(0, 1e4, size=(1000, 2)):
            if percentage_difference(x, y) != percentage_difference(y, x) or percentage_difference(x, x) != 0:
                failures.append(("pdiff", x, y))

        st["elapsed"] = time.perf_counter() - t0
        st["ok"] = not failures
    assert st["ok"], failures[:5]
    assert st["elapsed"] < st["budget"]


def test_criterion_7_fibonacci_binning(report, tmp_path):
    lengths = [1, 1, 2, 3, 4, 4, 5, 6, 8, 9, 13, 14, 21, 22, 34, 35, 55, 56, 89, 90, 144, 145, 233, 234, 500]

    def scan(n):
        edges = [0, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233]
        return next((i for i in range(12) if edges[i] < n <= edges[i + 1]), 12)

    with report(7, "Fibonacci binning against interval scan", 1.0) as st:
        t0 = time.perf_counter()
        dist = fib_bin(lengths)
        counts = [0] * 13
        for n in lengths:
            counts[scan(n)] += 1
        oracle = [c / len(lengths) for c in counts]

        records = [PublicationRecord(f"y{i}", year=2010, position=1, byline_length=n) for i, n in enumerate(lengths)]
        snap = tmp_path / "year.snap"
        from fibimetrics.records import store
        store([AuthorProfile("solo", "Solo", field_tag="F", records=records),
               AuthorProfile("twin", "Twin", field_tag="G", records=records[:3])], snap)
        out_dir = tmp_path / "bundle"
        code = main(["cohort", "--snapshot", str(snap), "--window", "2000:2020", "--out-dir", str(out_dir),
                     "--output", "csv"], out=io.StringIO(), err=io.StringIO())
        header, row = list(csv.reader(io.StringIO((out_dir / "fib_bins.csv").read_text())))[:2]
        st["elapsed"] = time.perf_counter() - t0
        st["ok"] = (
            code == 0
            and list(dist.shares) == oracle
            and list(FIB_BIN_LABELS[:12]) == FIB_INTERVALS
            and header[1:13] == FIB_INTERVALS
            and [float(v) for v in row[1:]] == oracle
        )
    assert st["ok"], (dist.shares, oracle, header)
    assert st["elapsed"] < st["budget"]


def test_criterion_8_smoother_affine(report):
    grid = np.arange(1.0, 601.0)
    lines = [(0.0, 1.0), (5.0, -0.02), (-3.5, 0.75), (100.0, 0.0)]
    with report(8, "smoother reproduces affine curves within 1e-6", 1.0) as st:
        t0 = time.perf_counter()
        worst = 0.0
        rng = np.random.default_rng(8)
        for a, b in lines:
            for x in (grid, np.sort(rng.uniform(1, 600, 150))):
                y = a + b * x
                worst = max(worst, float(np.max(np.abs(lowess(x, y, 0.3, x_eval=grid) - (a + b * grid)))))
        st["elapsed"] = time.perf_counter() - t0
        st["ok"] = worst < 1e-6
    assert st["ok"], worst
    assert st["elapsed"] < st["budget"]

"""Command-line front end.

Subcommands follow the pipeline: ``ingest`` (read, curate, snapshot),
``compute`` (per-author indicators), ``cohort`` (cohort analytics),
``bench`` (benchmarks and endorsement table) and ``synth`` (synthetic
cohorts).  Exit codes: 0 success, 1 validation or domain error, 2 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from pathlib import Path
from typing import Any, Callable, Sequence

from . import __version__
from .cohort import (
    FIB_BIN_LABELS,
    METRICS,
    SynthSpec,
    binned_shares_by_year,
    field_histograms,
    hellinger_matrix,
    rank_curve,
    synth_cohort,
    typical_value,
    yearly_stats,
)
from .cohort.synth import ABUSE_PATTERNS
from .exceptions import FibimetricsError, UnresolvedPositionError
from .fibcore import (
    LOWER_BENCHMARK,
    UPPER_BENCHMARK,
    derive_benchmarks,
    endorsed_publications,
    endorsement_table,
    fibonacci,
    format_endorsement,
)
from .indicators import INDICATOR_KEYS, cumulative_t_prime, indicator_set
from .records import curate, ingest, load, store
from .validation import (
    check_benchmark,
    check_fraction,
    check_positive_int,
    check_unit_interval,
    parse_window,
)

SEED_ENV = "FIBIMETRICS_SEED"
OUTPUT_FORMATS = ("table", "csv", "json")


class UsageError(FibimetricsError, ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 is reserved for I/O here
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# ---------------------------------------------------------------- config


def _parse_benchmark(text: str) -> float:
    aliases = {"upper": UPPER_BENCHMARK, "lower": LOWER_BENCHMARK}
    value = aliases.get(text.strip().lower())
    if value is None:
        try:
            value = float(text)
        except ValueError:
            raise ValueError(f"invalid benchmark {text!r}") from None
    return check_benchmark(value)


def _benchmark_list(text: str) -> list[float]:
    return [_parse_benchmark(t) for t in text.split(",") if t.strip()]


def _fraction(text: str) -> float:
    return check_fraction(float(text))


def _threshold(text: str) -> float:
    return check_unit_interval(float(text), "threshold")


def _output(text: str) -> str:
    if text not in OUTPUT_FORMATS:
        raise ValueError(f"output must be one of {OUTPUT_FORMATS}, got {text!r}")
    return text


#: key -> (converter, built-in default) for settings a config file may set
SETTINGS: dict[str, tuple[Callable[[str], Any], Any]] = {
    "window": (parse_window, (1991, 2024)),
    "threshold": (_threshold, 0.8),
    "benchmark": (_benchmark_list, None),
    "fraction": (_fraction, 0.3),
    "output": (_output, None),
    "seed": (int, 0),
    "metric": (str, "T_prime"),
    "terms": (int, 10946),
}


def read_config(path: str | os.PathLike) -> dict[str, str]:
    """Parse a ``key = value`` file; ``#`` starts a comment."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected 'key = value'")
            key, value = (part.strip() for part in line.split("=", 1))
            key = key.replace("-", "_")
            if key not in SETTINGS:
                raise UsageError(f"{path}:{lineno}: unknown setting {key!r}")
            out[key] = value
    return out


def _resolve_settings(args: argparse.Namespace) -> None:
    """Fill unset options: command line, then config file, then built-ins."""
    config = read_config(args.config) if args.config else {}
    for key, (convert, default) in SETTINGS.items():
        if not hasattr(args, key) or getattr(args, key) is not None:
            continue
        if key in config:
            setattr(args, key, convert(config[key]))
        elif key == "seed" and os.environ.get(SEED_ENV):
            setattr(args, key, int(os.environ[SEED_ENV]))
        else:
            setattr(args, key, default)


# ---------------------------------------------------------------- output


def _fmt_cell(value: Any, places: int = 4) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if math.isinf(value):
            return "unbounded"
        return f"{value:.{places}f}"
    return str(value)


def _json_safe(value: Any) -> Any:
    if isinstance(value, float) and (math.isinf(value) or math.isnan(value)):
        return None
    if isinstance(value, dict):
        return {k: _json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(v) for v in value]
    return value


def render_table(rows: list[dict], columns: Sequence[str], places: int = 4) -> str:
    cells = [[_fmt_cell(r.get(c), places) for c in columns] for r in rows]
    widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(columns)]
    lines = ["  ".join(c.rjust(w) for c, w in zip(columns, widths))]
    lines.append("  ".join("-" * w for w in widths))
    lines.extend("  ".join(v.rjust(w) for v, w in zip(row, widths)) for row in cells)
    return "\n".join(lines) + "\n"


def render_csv(rows: list[dict], columns: Sequence[str]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(columns), lineterminator="\n", extrasaction="ignore")
    writer.writeheader()
    for row in rows:
        writer.writerow(
            {
                k: ("true" if v is True else "false" if v is False else "" if v is None else v)
                for k, v in row.items()
            }
        )
    return buf.getvalue()


def emit(rows: list[dict], columns: Sequence[str], fmt: str, stream, places: int = 4) -> None:
    if fmt == "json":
        stream.write(json.dumps(_json_safe([{c: r.get(c) for c in columns} for r in rows]), indent=2) + "\n")
    elif fmt == "csv":
        stream.write(render_csv(rows, columns))
    else:
        stream.write(render_table(rows, columns, places))


# ---------------------------------------------------------------- ingest


REPORT_COLUMNS = (
    "field",
    "authors_before",
    "authors_after",
    "publications_before",
    "publications_after",
    "no-date",
    "bad-year",
    "patent",
    "name-unresolved",
    "out-of-window",
    "empty-profile",
)


def cmd_ingest(args, out, err) -> int:
    profiles = ingest(args.input, args.format)
    if args.no_curate:
        store(profiles, args.out)
        n = sum(len(p.records) for p in profiles)
        err.write(f"stored {len(profiles)} uncurated profiles ({n} records) in {args.out}\n")
        return 0
    curated, report = curate(profiles, args.window, args.threshold)
    store(curated, args.out)
    emit(report.rows(), REPORT_COLUMNS, args.output or "table", out)
    return 0


# ---------------------------------------------------------------- compute


def _benchmarks(args) -> list[float]:
    return args.benchmark or [LOWER_BENCHMARK, UPPER_BENCHMARK]


def _drop_unresolved(profiles):
    return [p.with_records(r for r in p.records if r.position is not None) for p in profiles]


def _compute_row(profile, as_of, benchmarks):
    ind = indicator_set(profile, as_of_year=as_of)
    row = {"author_id": profile.author_id, **ind.to_dict(), **ind.percentage_differences()}
    for b in benchmarks:
        row[f"above_{b:g}"] = None if ind.T_prime is None else ind.T_prime >= b
    return row


def cmd_compute(args, out, err) -> int:
    profiles = sorted(load(args.snapshot), key=lambda p: p.author_id)
    unresolved = [
        (p.author_id, r.publication_id) for p in profiles for r in p.records if r.position is None
    ]
    if unresolved:
        if not args.skip_unresolved:
            author, pub = unresolved[0]
            raise UnresolvedPositionError(
                f"{len(unresolved)} record(s) lack a byline position (first: author "
                f"{author!r}, publication {pub!r}); rerun ingest with curation or pass "
                f"--skip-unresolved"
            )
        profiles = _drop_unresolved(profiles)
    benchmarks = _benchmarks(args)
    if args.cumulative:
        rows = []
        for p in profiles:
            records = [r for r in p.records if args.as_of is None or (r.year is not None and r.year <= args.as_of)]
            if not any(r.year is not None for r in records):
                continue
            for year, value in cumulative_t_prime(p.with_records(records)):
                rows.append({"author_id": p.author_id, "year": year, "T_prime": value})
        emit(rows, ("author_id", "year", "T_prime"), args.output or "table", out)
        return 0
    if args.jobs and args.jobs > 1 and len(profiles) > 1:
        from joblib import Parallel, delayed

        rows = Parallel(n_jobs=args.jobs)(
            delayed(_compute_row)(p, args.as_of, benchmarks) for p in profiles
        )
    else:
        rows = [_compute_row(p, args.as_of, benchmarks) for p in profiles]
    columns = ("author_id",) + INDICATOR_KEYS + ("pdiff_P", "pdiff_C", "pdiff_h")
    columns += tuple(f"above_{b:g}" for b in benchmarks)
    emit(rows, columns, args.output or "table", out)
    return 0


# ---------------------------------------------------------------- cohort


def cohort_bundle(profiles, window, fields, metric, standardize, fraction, benchmarks, err=None):
    profiles = sorted(profiles, key=lambda p: p.author_id)
    indicators = {p.author_id: indicator_set(p) for p in profiles}

    yearly = [s.to_dict() for s in yearly_stats(profiles, window)]
    bins = [
        {"year": year, **dist.as_dict()}
        for year, dist in binned_shares_by_year(profiles, window).items()
    ]

    hell = None
    if fields is not None and len(fields) < 2:
        raise UsageError("the Hellinger matrix needs at least two fields")
    hists = field_histograms(profiles, fields)
    if len(hists) >= 2:
        labels, matrix = hellinger_matrix(hists)
        hell = {"fields": labels, "matrix": matrix.tolist()}
    elif err is not None:
        err.write("only one field tag present; Hellinger matrix skipped\n")

    curve = rank_curve(profiles, metric, standardize, fraction, indicators=indicators)
    curve_out = {
        "metric": metric,
        "standardized": standardize,
        "fraction": fraction,
        "points": curve.rows(),
        "smoothed": [{"rank": r, "smoothed": v} for r, v in curve.smoothed_points],
        "typical": typical_value(curve) if curve.values.size else None,
    }

    defined = [(a, ind.T_prime) for a, ind in indicators.items() if ind.T_prime is not None]
    bench_rows = [
        {
            "benchmark": b,
            "n_authors": len(defined),
            "below_share": (sum(t < b for _, t in defined) / len(defined)) if defined else None,
        }
        for b in benchmarks
    ]
    flags = [
        {"author_id": a, "field_tag": next(p.field_tag for p in profiles if p.author_id == a), "T_prime": t,
         **{f"below_{b:g}": t < b for b in benchmarks}}
        for a, t in defined
    ]
    return {
        "yearly_stats": yearly,
        "fib_bins": {"labels": list(FIB_BIN_LABELS), "rows": bins},
        "hellinger": hell,
        "rank_curve": curve_out,
        "benchmarks": bench_rows,
        "author_flags": flags,
    }


YEARLY_COLUMNS = ("year", "mean", "median", "q1", "q3", "n")


def _bundle_tables(bundle, benchmarks) -> dict[str, tuple[list[dict], tuple[str, ...]]]:
    tables = {
        "yearly_stats": (bundle["yearly_stats"], YEARLY_COLUMNS),
        "fib_bins": (bundle["fib_bins"]["rows"], ("year",) + FIB_BIN_LABELS),
        "rank_curve": (bundle["rank_curve"]["points"], ("author_id", "rank", "value", "smoothed")),
        "benchmarks": (bundle["benchmarks"], ("benchmark", "n_authors", "below_share")),
        "author_flags": (
            bundle["author_flags"],
            ("author_id", "field_tag", "T_prime") + tuple(f"below_{b:g}" for b in benchmarks),
        ),
    }
    if bundle["hellinger"] is not None:
        labels = bundle["hellinger"]["fields"]
        rows = [
            {"field": label, **dict(zip(labels, row))}
            for label, row in zip(labels, bundle["hellinger"]["matrix"])
        ]
        # repeated labels collapse dict keys; index them for tabular output
        if len(set(labels)) != len(labels):
            cols = [f"{label}#{i}" for i, label in enumerate(labels)]
            rows = [
                {"field": c, **dict(zip(cols, row))}
                for c, row in zip(cols, bundle["hellinger"]["matrix"])
            ]
            labels = cols
        tables["hellinger"] = (rows, ("field", *labels))
    return tables


def cmd_cohort(args, out, err) -> int:
    if args.metric not in METRICS:
        raise UsageError(f"unknown metric {args.metric!r}; expected one of {sorted(METRICS)}")
    profiles = load(args.snapshot)
    fields = [f.strip() for f in args.fields.split(",") if f.strip()] if args.fields else None
    benchmarks = _benchmarks(args)
    bundle = cohort_bundle(
        profiles, args.window, fields, args.metric, not args.no_standardize, args.fraction, benchmarks, err
    )
    fmt = args.output or "json"
    tables = _bundle_tables(bundle, benchmarks)
    if args.out_dir:
        out_dir = Path(args.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        for name, (rows, columns) in tables.items():
            (out_dir / f"{name}.csv").write_text(render_csv(rows, columns), encoding="utf-8")
        (out_dir / "cohort.json").write_text(json.dumps(_json_safe(bundle), indent=2) + "\n", encoding="utf-8")
        if fmt == "json":
            out.write(json.dumps(_json_safe(bundle), indent=2) + "\n")
        return 0
    if fmt == "json":
        out.write(json.dumps(_json_safe(bundle), indent=2) + "\n")
    else:
        for name, (rows, columns) in tables.items():
            out.write(f"# {name}\n")
            emit(rows, columns, fmt, out)
            out.write("\n")
    return 0


# ---------------------------------------------------------------- bench


def bench_rows(benchmarks, leading, positions):
    tables = {b: endorsement_table(b, leading, max(positions)) for b in benchmarks}
    rows = []
    for position in positions:
        row = {"position": position, "fibonacci": fibonacci(position)}
        for b in benchmarks:
            try:
                row[f"{tables[b].label} ({b:g})"] = endorsed_publications(b, leading, position)
            except ArithmeticError:
                row[f"{tables[b].label} ({b:g})"] = math.inf
        rows.append(row)
    limit = {"position": "inf", "fibonacci": "inf"}
    limit.update({f"{tables[b].label} ({b:g})": tables[b].limit for b in benchmarks})
    rows.append(limit)
    return rows


def cmd_bench(args, out, err) -> int:
    model = derive_benchmarks(check_positive_int(args.terms, "terms", minimum=3))
    benchmarks = args.benchmark or [UPPER_BENCHMARK, LOWER_BENCHMARK]
    leading = check_positive_int(args.leading, "leading")
    if args.position is not None:
        positions = [check_positive_int(args.position, "position", minimum=3)]
    else:
        positions = list(range(3, check_positive_int(args.max_position, "max-position", minimum=3) + 1))
    rows = bench_rows(benchmarks, leading, positions)
    columns = ("position", "fibonacci") + tuple(k for k in rows[0] if k not in ("position", "fibonacci"))
    summary = {
        "psi": model.psi,
        "reciprocal_square_sum": model.reciprocal_square_sum,
        "combined_expectation": model.combined_expectation,
        "separated_expectation": model.separated_expectation,
        "practical_benchmark": model.practical_benchmark,
        "terms": model.terms_used,
    }
    fmt = args.output or "table"
    if fmt == "json":
        payload = {"model": summary, "leading_count": leading, "endorsement": rows}
        out.write(json.dumps(_json_safe(payload), indent=2) + "\n")
    elif fmt == "csv":
        out.write(render_csv([{k: ("unbounded" if isinstance(v, float) and math.isinf(v) else v)
                               for k, v in r.items()} for r in rows], columns))
    else:
        out.write(
            f"psi = {model.psi:.10f}   sum of squared credits = {model.reciprocal_square_sum:.4f} "
            f"({model.terms_used} terms)\n"
            f"expected credit: combined {model.combined_expectation:.2f}, "
            f"separated {model.separated_expectation:.2f}, midpoint "
            f"{(round(model.combined_expectation, 2) + round(model.separated_expectation, 2)) / 2:.2f}\n\n"
        )
        out.write(f"supporting-role papers endorsed per {leading} leading-role papers\n")
        display = [
            {k: (format_endorsement(v) if isinstance(v, float) else v) for k, v in r.items()} for r in rows
        ]
        out.write(render_table(display, columns))
    return 0


# ---------------------------------------------------------------- synth


def cmd_synth(args, out, err) -> int:
    y0, y1 = parse_window(args.years)
    weights = {1: 1.0} if args.sole_author else None
    kwargs = dict(
        n_authors=args.n_authors,
        years=(y0, y1),
        abuse=args.abuse,
        abuse_rate=args.abuse_rate,
        cartel_size=args.cartel_size,
        cartel_lead=args.cartel_lead,
        seed=args.seed,
    )
    if weights:
        kwargs["byline_weights"] = weights
    if args.fields:
        kwargs["field_tags"] = tuple(f.strip() for f in args.fields.split(",") if f.strip())
    if args.papers:
        lo, hi = parse_window(args.papers)
        kwargs["papers_per_author"] = (lo, hi)
    profiles = synth_cohort(SynthSpec(**kwargs))
    store(profiles, args.out)
    n = sum(len(p.records) for p in profiles)
    err.write(f"wrote {len(profiles)} profiles ({n} records, seed {args.seed}) to {args.out}\n")
    return 0


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fibimetrics", description="Fibonacci-adjusted bibliometric indicators.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = _Parser(add_help=False)
    common.add_argument("--config", help="key = value file overriding built-in defaults")
    common.add_argument("--output", choices=OUTPUT_FORMATS, default=None, help="report format")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("ingest", parents=[common], help="read, curate and snapshot an export")
    p.add_argument("--in", dest="input", required=True, help="CSV or JSON export")
    p.add_argument("--format", choices=("csv", "json"), help="inferred from the suffix by default")
    p.add_argument("--window", type=parse_window, default=None, help="START:END, default 1991:2024")
    p.add_argument("--threshold", type=_threshold, default=None, help="name-match threshold, default 0.8")
    p.add_argument("--out", required=True, help="snapshot path")
    p.add_argument("--no-curate", action="store_true", help="store raw records without curation")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("compute", parents=[common], help="per-author indicators")
    p.add_argument("--snapshot", required=True)
    p.add_argument("--as-of", type=int, default=None, help="only count records up to this year")
    p.add_argument("--benchmark", type=_parse_benchmark, action="append", default=None,
                   help="T' benchmark (0.66, 0.72, lower, upper or a custom value); repeatable")
    p.add_argument("--cumulative", action="store_true", help="emit the yearly cumulative T' series")
    p.add_argument("--skip-unresolved", action="store_true", help="ignore records without a position")
    p.add_argument("--jobs", type=int, default=1, help="parallel workers for per-author evaluation")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("cohort", parents=[common], help="cohort analytics bundle")
    p.add_argument("--snapshot", required=True)
    p.add_argument("--window", type=parse_window, default=None)
    p.add_argument("--fields", help="comma-separated field tags for the Hellinger matrix")
    p.add_argument("--metric", default=None, help=f"rank-curve metric: {', '.join(METRICS)}")
    p.add_argument("--no-standardize", action="store_true", help="rank all authors together")
    p.add_argument("--fraction", type=_fraction, default=None, help="smoother span, default 0.3")
    p.add_argument("--benchmark", type=_parse_benchmark, action="append", default=None)
    p.add_argument("--out-dir", help="also write one CSV per table here")
    p.set_defaults(func=cmd_cohort)

    p = sub.add_parser("bench", parents=[common], help="T' benchmarks and endorsement table")
    p.add_argument("--terms", type=int, default=None, help="distinct credits summed, default 10946")
    p.add_argument("--benchmark", type=_parse_benchmark, action="append", default=None)
    p.add_argument("--leading", type=int, default=3, help="leading-role papers per block")
    p.add_argument("--max-position", type=int, default=34)
    p.add_argument("--position", type=int, default=None, help="report a single position")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("synth", parents=[common], help="generate a synthetic cohort snapshot")
    p.add_argument("--out", required=True)
    p.add_argument("--n-authors", type=int, default=50)
    p.add_argument("--years", default="2000:2020")
    p.add_argument("--papers", help="papers per author as MIN:MAX")
    p.add_argument("--abuse", choices=ABUSE_PATTERNS, default="none")
    p.add_argument("--abuse-rate", type=float, default=0.5)
    p.add_argument("--cartel-size", type=int, default=5)
    p.add_argument("--cartel-lead", type=int, default=10)
    p.add_argument("--sole-author", action="store_true", help="every paper has one author")
    p.add_argument("--fields", help="comma-separated field tags assigned round-robin")
    p.add_argument("--seed", type=int, default=None, help=f"defaults to ${SEED_ENV} or 0")
    p.set_defaults(func=cmd_synth)
    return parser


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        _resolve_settings(args)
        return args.func(args, out, err)
    except OSError as exc:
        err.write(f"fibimetrics: {exc}\n")
        return 2
    except (FibimetricsError, ValueError) as exc:
        err.write(f"fibimetrics: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())

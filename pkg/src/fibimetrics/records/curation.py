"""Record curation with per-reason drop accounting."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

from .model import AuthorProfile, PublicationRecord
from .names import DEFAULT_THRESHOLD, resolve_position

NO_DATE = "no-date"
BAD_YEAR = "bad-year"
PATENT = "patent"
NAME_UNRESOLVED = "name-unresolved"
OUT_OF_WINDOW = "out-of-window"
EMPTY_PROFILE = "empty-profile"

RECORD_REASONS = (NO_DATE, BAD_YEAR, PATENT, NAME_UNRESOLVED, OUT_OF_WINDOW)
DROP_REASONS = RECORD_REASONS + (EMPTY_PROFILE,)

DEFAULT_WINDOW = (1991, 2024)

# plausible calendar years; anything else is a source error
MIN_YEAR, MAX_YEAR = 1000, 2999


@dataclass
class FieldCounts:
    authors_in: int = 0
    authors_out: int = 0
    records_in: int = 0
    records_out: int = 0
    drops: Counter = field(default_factory=Counter)

    def reconciles(self) -> bool:
        record_drops = sum(self.drops[r] for r in RECORD_REASONS)
        return (
            self.records_in == self.records_out + record_drops
            and self.authors_in == self.authors_out + self.drops[EMPTY_PROFILE]
        )


@dataclass
class CurationReport:
    """Before/after counts per field tag plus drop counts per reason.

    ``drops[EMPTY_PROFILE]`` counts authors; every other reason counts
    records.
    """

    by_field: dict[str, FieldCounts] = field(default_factory=dict)

    def _field(self, tag: str) -> FieldCounts:
        return self.by_field.setdefault(tag, FieldCounts())

    @property
    def total(self) -> FieldCounts:
        out = FieldCounts()
        for counts in self.by_field.values():
            out.authors_in += counts.authors_in
            out.authors_out += counts.authors_out
            out.records_in += counts.records_in
            out.records_out += counts.records_out
            out.drops.update(counts.drops)
        return out

    @property
    def drops(self) -> dict[str, int]:
        total = self.total.drops
        return {reason: total[reason] for reason in DROP_REASONS}

    def reconciles(self) -> bool:
        return all(c.reconciles() for c in self.by_field.values())

    def rows(self) -> list[dict[str, object]]:
        """One row per field and a final ``TOTAL`` row, shaped like a
        before/after preprocessing summary."""
        out = []
        items = sorted(self.by_field.items()) + [("TOTAL", self.total)]
        for tag, c in items:
            row = {
                "field": tag or "(none)",
                "authors_before": c.authors_in,
                "authors_after": c.authors_out,
                "publications_before": c.records_in,
                "publications_after": c.records_out,
            }
            row.update({reason: c.drops[reason] for reason in DROP_REASONS})
            out.append(row)
        return out


def _is_patent(record: PublicationRecord) -> bool:
    return "patent" in (record.pub_type or "").casefold()


def curate(
    profiles: Iterable[AuthorProfile],
    window: tuple[int, int] = DEFAULT_WINDOW,
    position_threshold: float = DEFAULT_THRESHOLD,
) -> tuple[list[AuthorProfile], CurationReport]:
    """Filter records and profiles; return survivors and a drop report.

    Each record is checked in this order and dropped at the first failure:
    missing year, implausible or unparseable year, patent publication type,
    unresolvable byline position, year outside ``window``.  Profiles left
    without records are dropped last.  Records that already carry a
    position skip name resolution, so curating twice drops nothing new.
    """
    start, end = window
    if start > end:
        raise ValueError(f"window start {start} is after end {end}")
    report = CurationReport()
    kept = []
    for profile in profiles:
        counts = report._field(profile.field_tag)
        counts.authors_in += 1
        counts.records_in += len(profile.records)
        survivors = []
        for record in profile.records:
            reason, record = _check_record(record, profile, start, end, position_threshold)
            if reason is None:
                survivors.append(record)
            else:
                counts.drops[reason] += 1
        counts.records_out += len(survivors)
        if not survivors:
            counts.drops[EMPTY_PROFILE] += 1
            continue
        counts.authors_out += 1
        kept.append(profile.with_records(survivors))
    return kept, report


def _check_record(record, profile, start, end, threshold):
    if record.year is None:
        return (BAD_YEAR if record.year_raw else NO_DATE), record
    if not MIN_YEAR <= record.year <= MAX_YEAR:
        return BAD_YEAR, record
    if _is_patent(record):
        return PATENT, record
    if record.position is None:
        if not record.raw_authors:
            return NAME_UNRESOLVED, record
        position = resolve_position(profile.variants, record.raw_authors, threshold)
        if position is None:
            return NAME_UNRESOLVED, record
        record = record.with_position(position)
    if not start <= record.year <= end:
        return OUT_OF_WINDOW, record
    return None, record

"""Yearly authorship statistics, Fibonacci binning and Hellinger distances."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence, Union

import numpy as np

from ..records.model import AuthorProfile, PublicationRecord

#: Right-closed interval edges: (0,1], (1,2], (2,3], (3,5], ..., (144,233].
FIB_BIN_EDGES = (0, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233)
FIB_BIN_LABELS = tuple(
    f"({lo},{hi}]" for lo, hi in zip(FIB_BIN_EDGES[:-1], FIB_BIN_EDGES[1:])
) + ("(233,inf)",)


@dataclass(frozen=True)
class YearlyAuthorStats:
    year: int
    mean: float
    median: float
    q1: float
    q3: float
    n_publications: int

    def to_dict(self) -> dict:
        return {
            "year": self.year,
            "mean": self.mean,
            "median": self.median,
            "q1": self.q1,
            "q3": self.q3,
            "n": self.n_publications,
        }


def distinct_publications(profiles: Iterable[AuthorProfile]) -> list[PublicationRecord]:
    """One record per ``publication_id``; the first profile listing it wins."""
    seen: dict[str, PublicationRecord] = {}
    for profile in profiles:
        for record in profile.records:
            seen.setdefault(record.publication_id, record)
    return list(seen.values())


def _lengths_by_year(profiles, window) -> dict[int, list[int]]:
    start, end = window
    by_year: dict[int, list[int]] = {}
    for record in distinct_publications(profiles):
        if record.year is None or record.byline_length is None:
            continue
        if start <= record.year <= end:
            by_year.setdefault(record.year, []).append(record.byline_length)
    return dict(sorted(by_year.items()))


def yearly_stats(
    profiles: Iterable[AuthorProfile], window: tuple[int, int]
) -> list[YearlyAuthorStats]:
    """Mean, median and quartiles of authors per publication for each year.

    Publications are deduplicated across profiles by ``publication_id``.
    Quartiles use linear interpolation between order statistics (numpy's
    default ``"linear"`` method).  Years without publications are omitted.
    """
    out = []
    for year, lengths in _lengths_by_year(profiles, window).items():
        arr = np.asarray(lengths, dtype=float)
        q1, median, q3 = np.percentile(arr, [25, 50, 75])
        out.append(
            YearlyAuthorStats(
                year=year,
                mean=float(arr.mean()),
                median=float(median),
                q1=float(q1),
                q3=float(q3),
                n_publications=len(lengths),
            )
        )
    return out


@dataclass(frozen=True)
class FibBinnedDistribution:
    """Shares of byline lengths per Fibonacci interval plus an overflow bin."""

    counts: tuple[int, ...]
    shares: tuple[float, ...]
    labels: tuple[str, ...] = FIB_BIN_LABELS

    @property
    def percentages(self) -> tuple[float, ...]:
        return tuple(100.0 * s for s in self.shares)

    def as_dict(self) -> dict[str, float]:
        return dict(zip(self.labels, self.shares))


def fib_bin_index(length: int) -> int:
    """Index of the right-closed Fibonacci interval holding ``length``."""
    if length < 1:
        raise ValueError(f"byline length must be >= 1, got {length}")
    if length > FIB_BIN_EDGES[-1]:
        return len(FIB_BIN_EDGES) - 1
    return int(np.searchsorted(FIB_BIN_EDGES, length, side="left")) - 1


def fib_bin(byline_lengths: Sequence[int]) -> FibBinnedDistribution:
    """Histogram byline lengths into Fibonacci intervals and normalise."""
    if len(byline_lengths) == 0:
        raise ValueError("fib_bin needs at least one byline length")
    counts = [0] * len(FIB_BIN_LABELS)
    for length in byline_lengths:
        counts[fib_bin_index(int(length))] += 1
    n = len(byline_lengths)
    return FibBinnedDistribution(tuple(counts), tuple(c / n for c in counts))


def binned_shares_by_year(
    profiles: Iterable[AuthorProfile], window: tuple[int, int]
) -> dict[int, FibBinnedDistribution]:
    return {year: fib_bin(lengths) for year, lengths in _lengths_by_year(profiles, window).items()}


def author_count_histogram(byline_lengths: Iterable[int]) -> dict[int, int]:
    """Raw integer author-count histogram ``{length: count}``."""
    return dict(sorted(Counter(int(n) for n in byline_lengths).items()))


Histogram = Union[FibBinnedDistribution, Mapping, Sequence[float], np.ndarray]


def _as_mapping(h: Histogram) -> dict:
    if isinstance(h, FibBinnedDistribution):
        return dict(enumerate(h.counts))
    if isinstance(h, Mapping):
        return dict(h)
    return dict(enumerate(np.asarray(h, dtype=float).ravel()))


def _normalise(values: np.ndarray) -> np.ndarray:
    if np.any(values < 0) or not np.all(np.isfinite(values)):
        raise ValueError("histogram entries must be finite and non-negative")
    total = values.sum()
    if total <= 0:
        raise ValueError("cannot normalise an all-zero histogram")
    return values / total


def align(p: Histogram, q: Histogram) -> tuple[np.ndarray, np.ndarray]:
    """Normalised probability vectors on the union of both supports."""
    mp, mq = _as_mapping(p), _as_mapping(q)
    support = sorted(set(mp) | set(mq), key=lambda k: (str(type(k)), k))
    vp = np.array([float(mp.get(k, 0.0)) for k in support])
    vq = np.array([float(mq.get(k, 0.0)) for k in support])
    return _normalise(vp), _normalise(vq)


def hellinger(p: Histogram, q: Histogram) -> float:
    """Hellinger distance ``sqrt(sum (sqrt p_i - sqrt q_i)^2) / sqrt 2``.

    Inputs may be counts or probabilities; each is normalised after padding
    both to the union of their supports.  Sequences are indexed by position,
    mappings by key.
    """
    vp, vq = align(p, q)
    d = math.sqrt(float(np.sum((np.sqrt(vp) - np.sqrt(vq)) ** 2)) / 2.0)
    return min(d, 1.0)


def hellinger_matrix(
    field_distributions: Mapping[str, Histogram] | Sequence[tuple[str, Histogram]],
) -> tuple[list[str], np.ndarray]:
    """Pairwise Hellinger distances between field author-count histograms.

    Accepts a mapping or a sequence of ``(label, histogram)`` pairs (the
    latter allows repeated labels).  Returns ``(labels, matrix)``.
    """
    items = list(field_distributions.items()) if isinstance(field_distributions, Mapping) else list(field_distributions)
    if len(items) < 2:
        raise ValueError("hellinger_matrix needs at least two distributions")
    labels = [label for label, _ in items]
    n = len(items)
    matrix = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            matrix[i, j] = matrix[j, i] = hellinger(items[i][1], items[j][1])
    return labels, matrix


def field_histograms(
    profiles: Iterable[AuthorProfile], fields: Sequence[str] | None = None
) -> list[tuple[str, dict[int, int]]]:
    """Author-count histogram per field tag over each field's distinct papers."""
    by_field: dict[str, list[AuthorProfile]] = {}
    for profile in profiles:
        by_field.setdefault(profile.field_tag, []).append(profile)
    if fields is None:
        fields = sorted(by_field)
    out = []
    for tag in fields:
        if tag not in by_field:
            raise ValueError(f"no profiles with field tag {tag!r}")
        lengths = [
            r.byline_length
            for r in distinct_publications(by_field[tag])
            if r.byline_length is not None
        ]
        out.append((tag, author_count_histogram(lengths)))
    return out

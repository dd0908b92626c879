"""Rank curves: an indicator plotted against the author's participation rank."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from ..fibcore import FibCreditTable
from ..indicators import IndicatorSet, indicator_set
from ..records.model import AuthorProfile
from .smoothing import DEFAULT_FRACTION, lowess

#: metric -> participation counterpart that orders the authors
METRICS = {
    "pdiff_P": "P",
    "pdiff_C": "C",
    "pdiff_h": "h",
    "T_prime": "P",
}

#: common grid for field-standardised ranks
STANDARD_GRID_MAX = 600


@dataclass(frozen=True)
class RankCurve:
    """Per-author points and their smoothed curve.

    ``ranks`` are non-decreasing (several fields can share a standardised
    rank); ``grid`` holds the distinct ranks in increasing order and
    ``smoothed`` the smoothed value at each.  ``smoothed`` is empty when
    the cohort is too small to smooth.
    """

    metric: str
    author_ids: tuple[str, ...]
    ranks: np.ndarray
    values: np.ndarray
    grid: np.ndarray
    smoothed: np.ndarray

    @property
    def points(self) -> list[tuple[float, float]]:
        return list(zip(self.ranks.tolist(), self.values.tolist()))

    @property
    def smoothed_points(self) -> list[tuple[float, float]]:
        return list(zip(self.grid.tolist(), self.smoothed.tolist()))

    def rows(self) -> list[dict]:
        smooth = dict(self.smoothed_points)
        return [
            {
                "author_id": a,
                "rank": float(r),
                "value": float(v),
                "smoothed": smooth.get(float(r)),
            }
            for a, r, v in zip(self.author_ids, self.ranks, self.values)
        ]


def metric_value(ind: IndicatorSet, metric: str) -> float | None:
    if metric == "T_prime":
        return ind.T_prime
    return ind.percentage_differences()[metric]


def smooth_curve(ranks, values, frac: float = DEFAULT_FRACTION) -> tuple[np.ndarray, np.ndarray]:
    """Smooth ``values`` over ``ranks``; returns ``(grid, smoothed)`` on the
    distinct ranks."""
    ranks = np.asarray(ranks, dtype=float)
    grid = np.unique(ranks)
    return grid, lowess(ranks, values, frac=frac, x_eval=grid)


def _ordinal_ranks(entries: list[tuple[str, float]]) -> dict[str, int]:
    ordered = sorted(entries, key=lambda e: (-e[1], e[0]))
    return {author: i for i, (author, _) in enumerate(ordered, start=1)}


def rank_curve(
    profiles: Iterable[AuthorProfile],
    metric: str = "T_prime",
    standardize_by_field: bool = True,
    smoother_fraction: float = DEFAULT_FRACTION,
    table: FibCreditTable | None = None,
    indicators: dict[str, IndicatorSet] | None = None,
) -> RankCurve:
    """Rank authors by descending participation count and attach ``metric``.

    Authors are ranked on P (for ``pdiff_P`` and ``T_prime``), C or h, ties
    broken by author id.  With ``standardize_by_field`` each field's ranks
    ``1..n`` are rescaled to ``1..600`` so fields of different size share
    one axis.  Authors whose metric is undefined (T' with P = 0) are left
    out.  Fewer than three authors yields points without smoothing.
    """
    if metric not in METRICS:
        raise ValueError(f"unknown metric {metric!r}; expected one of {sorted(METRICS)}")
    if not 0.0 < smoother_fraction <= 1.0:
        raise ValueError(f"smoother_fraction must lie in (0, 1], got {smoother_fraction}")
    profiles = list(profiles)
    if indicators is None:
        indicators = {p.author_id: indicator_set(p, table) for p in profiles}
    counterpart = METRICS[metric]

    groups: dict[str, list[tuple[str, float]]] = {}
    values: dict[str, float] = {}
    for p in profiles:
        ind = indicators[p.author_id]
        value = metric_value(ind, metric)
        if value is None:
            continue
        values[p.author_id] = value
        key = p.field_tag if standardize_by_field else ""
        groups.setdefault(key, []).append((p.author_id, float(getattr(ind, counterpart))))

    points = []
    for members in groups.values():
        ranks = _ordinal_ranks(members)
        n = len(members)
        for author, r in ranks.items():
            if standardize_by_field:
                r = 1.0 if n == 1 else 1.0 + (r - 1) * (STANDARD_GRID_MAX - 1) / (n - 1)
            points.append((float(r), author))
    points.sort()

    author_ids = tuple(a for _, a in points)
    rank_arr = np.array([r for r, _ in points], dtype=float)
    value_arr = np.array([values[a] for a in author_ids], dtype=float)
    if len(points) >= 3:
        grid, smoothed = smooth_curve(rank_arr, value_arr, smoother_fraction)
    else:
        grid, smoothed = np.unique(rank_arr), np.array([], dtype=float)
    return RankCurve(metric, author_ids, rank_arr, value_arr, grid, smoothed)


def typical_value(curve: RankCurve | Sequence[float]) -> float:
    """Median of the smoothed curve (of the raw points if unsmoothed)."""
    if isinstance(curve, RankCurve):
        data = curve.smoothed if curve.smoothed.size else curve.values
    else:
        data = np.asarray(curve, dtype=float)
    if np.size(data) == 0:
        raise ValueError("typical_value of an empty curve")
    return float(np.median(data))

"""Input validation helpers shared by the estimators and the CLI."""

from __future__ import annotations

from numbers import Integral, Real
from typing import Iterable

from .records.model import AuthorProfile


def check_profiles(X: Iterable[AuthorProfile], *, allow_empty: bool = True) -> list[AuthorProfile]:
    """Materialise ``X`` as a list of :class:`AuthorProfile` and reject
    anything else, including duplicate author ids."""
    if isinstance(X, AuthorProfile):
        raise TypeError("expected a sequence of AuthorProfile, got a single profile")
    profiles = list(X)
    seen = set()
    for i, p in enumerate(profiles):
        if not isinstance(p, AuthorProfile):
            raise TypeError(f"X[{i}] is {type(p).__name__}, expected AuthorProfile")
        if p.author_id in seen:
            raise ValueError(f"duplicate author_id {p.author_id!r}")
        seen.add(p.author_id)
    if not allow_empty and not profiles:
        raise ValueError("at least one profile is required")
    return profiles


def check_window(window) -> tuple[int, int]:
    try:
        start, end = window
    except (TypeError, ValueError):
        raise ValueError(f"window must be a (start_year, end_year) pair, got {window!r}") from None
    if not isinstance(start, Integral) or not isinstance(end, Integral):
        raise ValueError(f"window years must be integers, got {window!r}")
    if start > end:
        raise ValueError(f"window start {start} is after end {end}")
    return int(start), int(end)


def parse_window(text: str) -> tuple[int, int]:
    """Parse ``"1991:2024"``."""
    parts = text.split(":")
    if len(parts) != 2:
        raise ValueError(f"window must look like START:END, got {text!r}")
    try:
        return check_window((int(parts[0]), int(parts[1])))
    except ValueError as exc:
        raise ValueError(f"invalid window {text!r}: {exc}") from None


def check_fraction(value, name: str = "fraction") -> float:
    if not isinstance(value, Real) or not 0.0 < value <= 1.0:
        raise ValueError(f"{name} must lie in (0, 1], got {value!r}")
    return float(value)


def check_unit_interval(value, name: str = "threshold") -> float:
    if not isinstance(value, Real) or not 0.0 <= value <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {value!r}")
    return float(value)


def check_benchmark(value) -> float:
    if not isinstance(value, Real) or not 0.0 < value < 1.0:
        raise ValueError(f"benchmark must lie in (0, 1), got {value!r}")
    return float(value)


def check_positive_int(value, name: str, minimum: int = 1) -> int:
    if isinstance(value, bool) or not isinstance(value, Integral) or value < minimum:
        raise ValueError(f"{name} must be an integer >= {minimum}, got {value!r}")
    return int(value)

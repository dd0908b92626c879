"""Locating an author inside a byline by fuzzy name matching.

Names are normalised (diacritics stripped, case folded, punctuation turned
into whitespace) and split into tokens.  Two names are scored by the
average of

* token overlap: matched tokens over the size of the smaller token list,
  where a single-letter token matches any token with that initial, and
* normalised Levenshtein similarity of the sorted token strings.  When
  either name carries an initial, both names are reduced to initials first
  so that ``"J.R. Okafor"`` and ``"Jane Rose Okafor"`` compare equal.
"""

from __future__ import annotations

import re
import unicodedata
from collections import Counter
from typing import Sequence

from rapidfuzz.distance import Levenshtein

DEFAULT_THRESHOLD = 0.8

_NON_ALNUM = re.compile(r"[^0-9a-z]+")


def normalize_tokens(name: str) -> list[str]:
    decomposed = unicodedata.normalize("NFKD", name)
    stripped = "".join(ch for ch in decomposed if not unicodedata.combining(ch))
    return _NON_ALNUM.sub(" ", stripped.casefold()).split()


def _token_overlap(a: list[str], b: list[str]) -> float:
    if not a or not b:
        return 0.0
    left, right = Counter(a), Counter(b)
    matched = 0
    for tok in list(left):
        n = min(left[tok], right[tok])
        matched += n
        left[tok] -= n
        right[tok] -= n
    # initials against the remaining full tokens
    for tok, n in sorted(left.items()):
        for _ in range(n):
            hit = _take_initial_match(tok, right)
            if hit:
                matched += 1
                left[tok] -= 1
    return matched / min(len(a), len(b))


def _take_initial_match(tok: str, pool: Counter) -> bool:
    for other in sorted(pool):
        if pool[other] <= 0:
            continue
        if (len(tok) == 1 and other.startswith(tok)) or (
            len(other) == 1 and tok.startswith(other)
        ):
            pool[other] -= 1
            return True
    return False


def _edit_similarity(a: list[str], b: list[str]) -> float:
    if any(len(t) == 1 for t in a) or any(len(t) == 1 for t in b):
        a = [t[0] for t in a]
        b = [t[0] for t in b]
    return Levenshtein.normalized_similarity(" ".join(sorted(a)), " ".join(sorted(b)))


def name_similarity(a: str, b: str) -> float:
    """Score in [0, 1]; symmetric and insensitive to case and diacritics."""
    ta, tb = normalize_tokens(a), normalize_tokens(b)
    if not ta or not tb:
        return 0.0
    return 0.5 * _token_overlap(ta, tb) + 0.5 * _edit_similarity(ta, tb)


def resolve_position(
    name_variants: Sequence[str],
    raw_authors: Sequence[str],
    threshold: float = DEFAULT_THRESHOLD,
) -> int | None:
    """Return the 1-based byline index that best matches any name variant,
    or ``None`` when the best score falls below ``threshold``.

    Ties go to the earliest byline entry.
    """
    if not 0.0 <= threshold <= 1.0:
        raise ValueError(f"threshold must lie in [0, 1], got {threshold}")
    best_score, best_index = -1.0, None
    for index, author in enumerate(raw_authors, start=1):
        score = max((name_similarity(v, author) for v in name_variants), default=0.0)
        if score > best_score:
            best_score, best_index = score, index
    if best_index is None or best_score < threshold:
        return None
    return best_index

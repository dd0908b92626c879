"""Seeded synthetic cohorts with optional authorship-abuse injection.

Honest authors, abuse injection and cartel papers draw from independent
child streams of one :class:`numpy.random.SeedSequence`, so switching the
abuse pattern never changes an honest author's own positions, years or
citations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from ..records.model import AuthorProfile, PublicationRecord

ABUSE_PATTERNS = ("none", "ornamental_tail", "cartel", "passive_last")

DEFAULT_BYLINE_WEIGHTS = {1: 0.12, 2: 0.22, 3: 0.2, 4: 0.15, 5: 0.1, 6: 0.08, 8: 0.07, 13: 0.06}


@dataclass(frozen=True)
class SynthSpec:
    """Generator parameters.

    ``byline_weights`` maps byline length to relative frequency.
    ``abuse_rate`` is the share of eligible honest papers touched by
    ``ornamental_tail`` or ``passive_last``; ornamental tails only target
    papers with at least two authors, so every tail slot is a supporting
    rank.  ``cartel_size`` members each lead ``cartel_lead`` papers and
    appear in the tail of every paper led by another member.
    """

    n_authors: int = 50
    years: tuple[int, int] = (2000, 2020)
    papers_per_author: tuple[int, int] = (5, 40)
    byline_weights: Mapping[int, float] = field(default_factory=lambda: dict(DEFAULT_BYLINE_WEIGHTS))
    abuse: str = "none"
    abuse_rate: float = 0.5
    n_ornamental: int = 3
    tail_size: int = 2
    cartel_size: int = 5
    cartel_lead: int = 10
    mean_citations: float = 12.0
    field_tags: tuple[str, ...] = ("SYNTH",)
    seed: int = 0

    def validate(self) -> None:
        if self.n_authors < 0:
            raise ValueError("n_authors must be >= 0")
        if self.years[0] > self.years[1]:
            raise ValueError(f"invalid year range {self.years}")
        lo, hi = self.papers_per_author
        if not 1 <= lo <= hi:
            raise ValueError(f"invalid papers_per_author {self.papers_per_author}")
        if not self.byline_weights or any(
            int(k) < 1 or w < 0 for k, w in self.byline_weights.items()
        ) or sum(self.byline_weights.values()) <= 0:
            raise ValueError("byline_weights needs positive lengths and non-negative weights")
        if self.abuse not in ABUSE_PATTERNS:
            raise ValueError(f"unknown abuse pattern {self.abuse!r}; expected one of {ABUSE_PATTERNS}")
        if not 0.0 <= self.abuse_rate <= 1.0:
            raise ValueError("abuse_rate must lie in [0, 1]")
        if self.n_ornamental < 1 or self.tail_size < 1 or self.tail_size > self.n_ornamental:
            raise ValueError("need 1 <= tail_size <= n_ornamental")
        if self.cartel_size < 2 or self.cartel_lead < 1:
            raise ValueError("cartel needs cartel_size >= 2 and cartel_lead >= 1")
        if self.mean_citations < 0:
            raise ValueError("mean_citations must be >= 0")
        if not self.field_tags:
            raise ValueError("field_tags must not be empty")


class _Paper:
    __slots__ = ("pid", "year", "citations", "byline", "pub_type")

    def __init__(self, pid, year, citations, byline):
        self.pid = pid
        self.year = year
        self.citations = citations
        self.byline = byline
        self.pub_type = "article"


def _author_name(author_id: str) -> str:
    return f"Author {author_id}"


def synth_cohort(spec: SynthSpec | None = None, **overrides) -> list[AuthorProfile]:
    """Generate curated-shape profiles (positions resolved, years in range).

    Pass a :class:`SynthSpec`, keyword overrides, or both.  Output order is
    sorted by ``author_id``; equal specs produce identical profiles.
    """
    if spec is None:
        spec = SynthSpec(**overrides)
    elif overrides:
        spec = SynthSpec(**{**spec.__dict__, **overrides})
    spec.validate()
    honest_ss, abuse_ss, cartel_ss = np.random.SeedSequence(spec.seed).spawn(3)
    honest_rng = np.random.default_rng(honest_ss)

    lengths = np.array(sorted(int(k) for k in spec.byline_weights), dtype=int)
    weights = np.array([spec.byline_weights[k] for k in lengths], dtype=float)
    weights = weights / weights.sum()

    papers: list[_Paper] = []
    fields: dict[str, str] = {}
    y0, y1 = spec.years
    for i in range(spec.n_authors):
        aid = f"a{i:04d}"
        fields[aid] = spec.field_tags[i % len(spec.field_tags)]
        n_papers = int(honest_rng.integers(spec.papers_per_author[0], spec.papers_per_author[1] + 1))
        for j in range(n_papers):
            L = int(honest_rng.choice(lengths, p=weights))
            pos = int(honest_rng.integers(1, L + 1))
            byline = [f"{aid}-p{j}-co{k}" for k in range(1, L + 1)]
            byline[pos - 1] = aid
            year = int(honest_rng.integers(y0, y1 + 1))
            cites = int(honest_rng.poisson(spec.mean_citations))
            papers.append(_Paper(f"{aid}-p{j}", year, cites, byline))

    tracked = set(fields)
    abuse_rng = np.random.default_rng(abuse_ss)
    if spec.abuse == "ornamental_tail":
        pool = [f"orn{i:02d}" for i in range(spec.n_ornamental)]
        for paper in papers:
            if len(paper.byline) >= 2 and abuse_rng.random() < spec.abuse_rate:
                chosen = abuse_rng.choice(len(pool), size=spec.tail_size, replace=False)
                paper.byline.extend(pool[int(c)] for c in chosen)
        for aid in pool:
            fields[aid] = spec.field_tags[0]
        tracked.update(pool)
    elif spec.abuse == "passive_last":
        passive = "passive00"
        for paper in papers:
            if abuse_rng.random() < spec.abuse_rate:
                paper.byline.append(passive)
        fields[passive] = spec.field_tags[0]
        tracked.add(passive)
    elif spec.abuse == "cartel":
        cartel_rng = np.random.default_rng(cartel_ss)
        members = [f"cartel{i:02d}" for i in range(spec.cartel_size)]
        for m_index, leader in enumerate(members):
            fields[leader] = spec.field_tags[0]
            for j in range(spec.cartel_lead):
                # at least one genuine coauthor keeps the cartel at rank >= 3
                n_co = int(cartel_rng.integers(1, 3))
                byline = [leader] + [f"{leader}-p{j}-co{k}" for k in range(1, n_co + 1)]
                # rotate the other members so each takes varying tail slots
                others = members[m_index + 1:] + members[:m_index]
                shift = j % len(others)
                byline.extend(others[shift:] + others[:shift])
                year = int(cartel_rng.integers(y0, y1 + 1))
                cites = int(cartel_rng.poisson(spec.mean_citations))
                papers.append(_Paper(f"{leader}-p{j}", year, cites, byline))
        tracked.update(members)

    records: dict[str, list[PublicationRecord]] = {aid: [] for aid in tracked}
    for paper in papers:
        names = tuple(_author_name(a) if a in tracked else a for a in paper.byline)
        for pos, aid in enumerate(paper.byline, start=1):
            if aid in tracked:
                records[aid].append(
                    PublicationRecord(
                        publication_id=paper.pid,
                        title=f"Synthetic paper {paper.pid}",
                        year=paper.year,
                        position=pos,
                        byline_length=len(paper.byline),
                        citations=paper.citations,
                        pub_type=paper.pub_type,
                        raw_authors=names,
                    )
                )
    profiles = []
    for aid in sorted(tracked):
        if not records[aid]:
            continue
        profiles.append(
            AuthorProfile(
                author_id=aid,
                display_name=_author_name(aid),
                name_variants=(_author_name(aid),),
                field_tag=fields[aid],
                subfield_tags=(),
                records=tuple(records[aid]),
            )
        )
    return profiles

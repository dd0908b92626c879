"""Publication records and author profiles."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field, replace
from typing import Any, Iterable


def _as_tuple(values: Iterable[str] | None) -> tuple[str, ...]:
    if values is None:
        return ()
    if isinstance(values, str):
        raise TypeError("expected a sequence of strings, got a single string")
    return tuple(values)


@dataclass(frozen=True)
class PublicationRecord:
    """One paper on an author's profile.

    ``position`` is the author's 1-based rank in the byline, ``None`` until
    resolved.  ``byline_length`` may exceed ``len(raw_authors)`` when the
    source truncated the byline; it defaults to the visible author count.
    ``year_raw`` keeps an unparseable year string so curation can tell a
    missing date from a bad one.
    """

    publication_id: str
    title: str = ""
    year: int | None = None
    position: int | None = None
    byline_length: int | None = None
    citations: int = 0
    pub_type: str = "article"
    raw_authors: tuple[str, ...] = ()
    year_raw: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "raw_authors", _as_tuple(self.raw_authors))
        if self.byline_length is None:
            if self.raw_authors:
                object.__setattr__(self, "byline_length", len(self.raw_authors))
            elif self.position is not None:
                object.__setattr__(self, "byline_length", self.position)
        if isinstance(self.citations, bool) or not isinstance(self.citations, int):
            raise TypeError(f"citations must be an int, got {self.citations!r}")
        if self.citations < 0:
            raise ValueError(f"citations must be >= 0, got {self.citations}")
        if self.byline_length is not None:
            if self.byline_length < 1:
                raise ValueError(
                    f"byline_length must be >= 1, got {self.byline_length}"
                )
            if self.byline_length < len(self.raw_authors):
                raise ValueError(
                    f"byline_length {self.byline_length} is shorter than the "
                    f"{len(self.raw_authors)} listed authors"
                )
        if self.position is not None:
            if self.position < 1:
                raise ValueError(f"position must be >= 1, got {self.position}")
            if self.byline_length is not None and self.position > self.byline_length:
                raise ValueError(
                    f"position {self.position} exceeds byline_length "
                    f"{self.byline_length}"
                )

    def with_position(self, position: int) -> PublicationRecord:
        return replace(self, position=position)

    def to_dict(self) -> dict[str, Any]:
        d = asdict(self)
        d["raw_authors"] = list(self.raw_authors)
        return d

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> PublicationRecord:
        return cls(**d)


@dataclass(frozen=True)
class AuthorProfile:
    author_id: str
    display_name: str = ""
    name_variants: tuple[str, ...] = ()
    field_tag: str = ""
    subfield_tags: tuple[str, ...] = ()
    records: tuple[PublicationRecord, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "name_variants", _as_tuple(self.name_variants))
        object.__setattr__(self, "subfield_tags", _as_tuple(self.subfield_tags))
        object.__setattr__(self, "records", tuple(self.records))

    @property
    def variants(self) -> tuple[str, ...]:
        """Names used for byline matching; falls back to the display name."""
        if self.name_variants:
            return self.name_variants
        return (self.display_name,) if self.display_name else ()

    def with_records(self, records: Iterable[PublicationRecord]) -> AuthorProfile:
        return replace(self, records=tuple(records))

    def to_dict(self) -> dict[str, Any]:
        return {
            "author_id": self.author_id,
            "display_name": self.display_name,
            "name_variants": list(self.name_variants),
            "field_tag": self.field_tag,
            "subfield_tags": list(self.subfield_tags),
            "records": [r.to_dict() for r in self.records],
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> AuthorProfile:
        d = dict(d)
        d["records"] = tuple(
            PublicationRecord.from_dict(r) for r in d.get("records", ())
        )
        return cls(**d)

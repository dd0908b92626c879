"""Reading exported publication files and persisting profile snapshots."""

from __future__ import annotations

import csv
import json
import os
from pathlib import Path
from typing import Any, Iterable

from ..exceptions import IngestError, SnapshotError
from .model import AuthorProfile, PublicationRecord

CSV_COLUMNS = (
    "author_id",
    "display_name",
    "name_variants",
    "field_tag",
    "subfield_tags",
    "publication_id",
    "title",
    "year",
    "citations",
    "pub_type",
    "raw_authors",
)
OPTIONAL_CSV_COLUMNS = ("position", "byline_length")
LIST_SEP = ";"

SNAPSHOT_MAGIC = "FIBIMETRICS-SNAPSHOT v1"
SNAPSHOT_SCHEMA = 1

FORMATS = ("csv", "json")


def _split(value: str | None) -> tuple[str, ...]:
    if not value:
        return ()
    return tuple(part.strip() for part in value.split(LIST_SEP) if part.strip())


def _parse_year(value: Any) -> tuple[int | None, str | None]:
    """Return ``(year, raw)``; ``raw`` is kept only when parsing fails."""
    if value is None:
        return None, None
    if isinstance(value, bool):
        return None, str(value)
    if isinstance(value, int):
        return value, None
    text = str(value).strip()
    if not text:
        return None, None
    try:
        return int(text), None
    except ValueError:
        try:
            as_float = float(text)
        except ValueError:
            return None, text
        if as_float.is_integer():
            return int(as_float), None
        return None, text


def _parse_int(value: Any, *, default: int | None, location: str, field: str) -> int | None:
    if value is None or (isinstance(value, str) and not value.strip()):
        return default
    if isinstance(value, bool):
        raise IngestError(f"expected an integer, got {value!r}", location, field)
    if isinstance(value, int):
        return value
    try:
        return int(str(value).strip())
    except ValueError:
        raise IngestError(f"expected an integer, got {value!r}", location, field) from None


def _make_record(fields: dict[str, Any], location: str) -> PublicationRecord:
    year, year_raw = _parse_year(fields.get("year"))
    citations = _parse_int(fields.get("citations"), default=0, location=location, field="citations")
    position = _parse_int(fields.get("position"), default=None, location=location, field="position")
    byline_length = _parse_int(
        fields.get("byline_length"), default=None, location=location, field="byline_length"
    )
    publication_id = fields.get("publication_id")
    if publication_id is None or str(publication_id).strip() == "":
        raise IngestError("publication_id is required", location, "publication_id")
    try:
        return PublicationRecord(
            publication_id=str(publication_id),
            title=fields.get("title") or "",
            year=year,
            year_raw=year_raw,
            position=position,
            byline_length=byline_length,
            citations=citations,
            pub_type=fields.get("pub_type") or "",
            raw_authors=fields.get("raw_authors") or (),
        )
    except (TypeError, ValueError) as exc:
        field = next(
            (f for f in ("citations", "position", "byline_length") if f in str(exc)),
            None,
        )
        raise IngestError(str(exc), location, field) from None


def _ingest_csv(path: Path) -> list[AuthorProfile]:
    profiles: dict[str, dict[str, Any]] = {}
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        missing = [c for c in CSV_COLUMNS if c not in header]
        if missing:
            raise IngestError(f"missing required column(s) {missing}", f"{path}:1")
        for row in reader:
            location = f"{path}:{reader.line_num}"
            if None in row:
                raise IngestError("row has more fields than the header", location)
            author_id = (row["author_id"] or "").strip()
            if not author_id:
                raise IngestError("author_id is required", location, "author_id")
            fields = dict(row)
            fields["raw_authors"] = _split(row["raw_authors"])
            record = _make_record(fields, location)
            entry = profiles.setdefault(
                author_id,
                {
                    "author_id": author_id,
                    "display_name": row["display_name"] or "",
                    "name_variants": _split(row["name_variants"]),
                    "field_tag": row["field_tag"] or "",
                    "subfield_tags": _split(row["subfield_tags"]),
                    "records": [],
                },
            )
            entry["records"].append(record)
    return [AuthorProfile(**entry) for entry in profiles.values()]


def _ingest_json(path: Path) -> list[AuthorProfile]:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise IngestError(f"invalid JSON: {exc.msg}", f"{path}:{exc.lineno}") from None
    if not isinstance(data, list):
        raise IngestError("top level must be an array of profile objects", str(path))
    profiles = []
    for i, obj in enumerate(data):
        where = f"{path}: profiles[{i}]"
        if not isinstance(obj, dict):
            raise IngestError("profile must be an object", where)
        author_id = obj.get("author_id")
        if not author_id:
            raise IngestError("author_id is required", where, "author_id")
        records = []
        for j, rec in enumerate(obj.get("records") or []):
            rwhere = f"{where}.records[{j}]"
            if not isinstance(rec, dict):
                raise IngestError("record must be an object", rwhere)
            raw = rec.get("raw_authors") or ()
            if isinstance(raw, str):
                raise IngestError("raw_authors must be an array", rwhere, "raw_authors")
            records.append(_make_record({**rec, "raw_authors": tuple(raw)}, rwhere))
        for key in ("name_variants", "subfield_tags"):
            if isinstance(obj.get(key), str):
                raise IngestError(f"{key} must be an array", where, key)
        profiles.append(
            AuthorProfile(
                author_id=str(author_id),
                display_name=obj.get("display_name") or "",
                name_variants=tuple(obj.get("name_variants") or ()),
                field_tag=obj.get("field_tag") or "",
                subfield_tags=tuple(obj.get("subfield_tags") or ()),
                records=tuple(records),
            )
        )
    return profiles


def infer_format(path: str | os.PathLike) -> str:
    suffix = Path(path).suffix.lower().lstrip(".")
    if suffix not in FORMATS:
        raise ValueError(f"cannot infer format from {str(path)!r}; pass csv or json")
    return suffix


def ingest(path: str | os.PathLike, format: str | None = None) -> list[AuthorProfile]:
    """Read raw (uncurated) author profiles from a CSV or JSON export.

    Parameters
    ----------
    path : path-like
        Input file.  It is only read.
    format : {"csv", "json"}, optional
        Inferred from the file suffix when omitted.

    Raises
    ------
    IngestError
        Malformed content; the message names the line or record and field.
    ValueError
        Unknown format.
    OSError
        The file cannot be read.
    """
    path = Path(path)
    fmt = format.lower() if format else infer_format(path)
    if fmt == "csv":
        return _ingest_csv(path)
    if fmt == "json":
        return _ingest_json(path)
    raise ValueError(f"unknown format {format!r}; expected one of {FORMATS}")


def store(profiles: Iterable[AuthorProfile], path: str | os.PathLike) -> Path:
    """Write a snapshot: the magic line, a JSON header, one profile per line.

    The file is written to a temporary sibling and renamed into place.
    """
    path = Path(path)
    profiles = list(profiles)
    header = {"schema": SNAPSHOT_SCHEMA, "n_profiles": len(profiles)}
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(SNAPSHOT_MAGIC + "\n")
        fh.write(json.dumps(header, sort_keys=True) + "\n")
        for profile in profiles:
            fh.write(json.dumps(profile.to_dict(), sort_keys=True, ensure_ascii=False) + "\n")
    os.replace(tmp, path)
    return path


def load(path: str | os.PathLike) -> list[AuthorProfile]:
    """Read a snapshot written by :func:`store`.

    Raises
    ------
    SnapshotError
        Wrong magic line, schema version mismatch, or any malformed line.
        Nothing is returned on failure.
    """
    path = Path(path)
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines or lines[0] != SNAPSHOT_MAGIC:
        first = lines[0][:40] if lines else ""
        if first.startswith("FIBIMETRICS-SNAPSHOT"):
            raise SnapshotError(f"incompatible snapshot version {first!r}; expected {SNAPSHOT_MAGIC!r}")
        raise SnapshotError(f"{path} is not a snapshot (missing {SNAPSHOT_MAGIC!r} header)")
    try:
        header = json.loads(lines[1])
    except (IndexError, json.JSONDecodeError):
        raise SnapshotError(f"{path}: missing or corrupt header line") from None
    if not isinstance(header, dict) or header.get("schema") != SNAPSHOT_SCHEMA:
        raise SnapshotError(f"{path}: incompatible snapshot schema {header!r}")
    body = lines[2:]
    if len(body) != header.get("n_profiles"):
        raise SnapshotError(
            f"{path}: header declares {header.get('n_profiles')} profiles, found {len(body)}"
        )
    profiles = []
    for lineno, line in enumerate(body, start=3):
        try:
            profiles.append(AuthorProfile.from_dict(json.loads(line)))
        except (json.JSONDecodeError, TypeError, ValueError, KeyError) as exc:
            raise SnapshotError(f"{path}:{lineno}: corrupt profile ({exc})") from None
    return profiles

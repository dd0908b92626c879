"""Author profiles, file ingestion, curation and snapshots."""

from .curation import (
    DEFAULT_WINDOW,
    DROP_REASONS,
    CurationReport,
    FieldCounts,
    curate,
)
from .io import SNAPSHOT_MAGIC, ingest, load, store
from .model import AuthorProfile, PublicationRecord
from .names import DEFAULT_THRESHOLD, name_similarity, normalize_tokens, resolve_position

__all__ = [
    "AuthorProfile",
    "CurationReport",
    "DEFAULT_THRESHOLD",
    "DEFAULT_WINDOW",
    "DROP_REASONS",
    "FieldCounts",
    "PublicationRecord",
    "SNAPSHOT_MAGIC",
    "curate",
    "ingest",
    "load",
    "name_similarity",
    "normalize_tokens",
    "resolve_position",
    "store",
]

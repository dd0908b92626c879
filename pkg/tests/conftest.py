from importlib.resources import files

import pytest

from fibimetrics import build_credit_table, ingest
from fibimetrics.records import AuthorProfile, PublicationRecord

DATA = files("fibimetrics") / "data"

JOHN_DOE_POSITIONS = [1, 1, 2, 3, 5]
JOHN_DOE_CITATIONS = [1, 1, 4, 9, 25]


@pytest.fixture(scope="session")
def table():
    return build_credit_table(200)


@pytest.fixture
def john_doe_csv():
    return DATA / "john_doe.csv"


@pytest.fixture
def john_doe_bylines_csv():
    return DATA / "john_doe_bylines.csv"


@pytest.fixture
def john_doe(john_doe_csv):
    (profile,) = ingest(john_doe_csv)
    return profile


def make_profile(positions, citations=None, years=None, author_id="x", field_tag="F"):
    citations = citations or [0] * len(positions)
    years = years or [2000] * len(positions)
    records = [
        PublicationRecord(
            publication_id=f"{author_id}-{i}",
            year=y,
            position=p,
            byline_length=max(p, 1),
            citations=c,
        )
        for i, (p, c, y) in enumerate(zip(positions, citations, years))
    ]
    return AuthorProfile(author_id=author_id, display_name=author_id, field_tag=field_tag, records=records)

"""Exception types raised across the package."""


class FibimetricsError(Exception):
    """Base class for all package errors."""


class IngestError(FibimetricsError, ValueError):
    """A publication file could not be parsed under the declared schema.

    ``location`` names the line or record, ``field`` the offending column.
    """

    def __init__(self, message, location=None, field=None):
        self.location = location
        self.field = field
        where = []
        if location is not None:
            where.append(str(location))
        if field is not None:
            where.append(f"field {field!r}")
        prefix = ", ".join(where)
        super().__init__(f"{prefix}: {message}" if prefix else message)


class SnapshotError(FibimetricsError, ValueError):
    """A snapshot file is corrupted or has an incompatible schema version."""


class UnresolvedPositionError(FibimetricsError, ValueError):
    """An indicator was requested over a record without a byline position."""


class UndefinedIndicatorError(FibimetricsError, ValueError):
    """The indicator has no value for the given input (e.g. T' with P = 0)."""


class UnboundedEndorsementError(FibimetricsError, ArithmeticError):
    """The benchmark does not exceed the credit of the requested position."""

"""Exception hierarchy shared by every upbkit module."""


class UpbError(Exception):
    """Base class for all upbkit errors."""


class MalformedEntry(UpbError, ValueError):
    """A matrix entry does not match the ``token`` / ``token'`` grammar."""


class FamilyLeak(UpbError, ValueError):
    """A vector variable was placed in a column other than its own."""


class NotOrthogonal(UpbError, ValueError):
    """Some pair of rows has no orthogonal column."""

    def __init__(self, message: str, rows: tuple[int, int] | None = None):
        super().__init__(message)
        self.rows = rows


class ValidationRequired(UpbError, ValueError):
    """An analysis was requested on a matrix parsed with validation off."""


class IndexOutOfRange(UpbError, IndexError):
    pass


class DomainError(UpbError, ValueError):
    pass


class BudgetExceeded(UpbError, RuntimeError):
    pass


class ShapeMismatch(UpbError, ValueError):
    pass


class UnknownName(UpbError, KeyError):
    pass


class UnknownN(UpbError, ValueError):
    pass


class TooLarge(UpbError, ValueError):
    pass


class CatalogError(UpbError, RuntimeError):
    """A built-in matrix failed re-verification of one of its recorded facts."""

"""Exception hierarchy shared by all citegraph modules."""

from __future__ import annotations


class CitegraphError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(CitegraphError, ValueError):
    """Input data violates the documented format or an invariant."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class UnknownJournalError(CitegraphError, LookupError):
    def __init__(self, journal_id: str, line: int | None = None):
        self.journal_id = journal_id
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}unknown journal id {journal_id!r}")

    def __str__(self) -> str:  # LookupError would repr() the message
        return self.args[0]


class MissingTotalError(CitegraphError):
    """An operation needs an external total the journal record lacks."""


class EmptyBasisError(CitegraphError):
    """The denominator of a share or threshold is zero."""


class UndefinedEntryError(CitegraphError):
    """A similarity matrix holds undefined (NaN) entries."""


class ConvergenceError(CitegraphError):
    pass

"""Exception hierarchy shared by the library and the command line."""


class CbgError(Exception):
    """Base class for every error raised by this package."""

    exit_code = 1


class DomainError(CbgError, ValueError):
    """An argument lies outside the domain of an operation."""

    exit_code = 2


class ParseError(DomainError):
    """Malformed graph or manifest text."""

    exit_code = 2

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class PreconditionError(CbgError):
    """The input is not in the graph class an algorithm requires."""

    exit_code = 3


class CapExceeded(CbgError):
    """A brute-force routine refused an instance above its size cap."""

    exit_code = 4


class IntegrityError(CbgError):
    """An internal consistency check failed (a bug or a broken precondition)."""

    exit_code = 5

"""Exception types shared across the package."""


class QdgasError(Exception):
    """Base class for package errors."""


class ProblemFormatError(QdgasError):
    """A problem file is malformed; the message names the offending field."""


class ValueRangeError(QdgasError):
    """Encoded values would overflow a two's-complement register."""

    def __init__(self, message: str, required_width: int | None = None):
        super().__init__(message)
        self.required_width = required_width


class InfeasibleProblemError(QdgasError):
    """No feasible assignment was found."""

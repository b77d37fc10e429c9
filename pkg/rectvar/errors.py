"""Exception types raised by rectvar.

Every error also subclasses ValueError, so callers that only catch ValueError keep working.
The CLI maps these onto exit codes (see rectvar.cli).
"""


class RectvarError(ValueError):
    """Base class for all rectvar errors."""


class ConfigError(RectvarError):
    """Invalid configuration value or environment override."""


class CapExceededError(RectvarError):
    """An exact search was asked to run above its configured size cap."""

    def __init__(self, what: str, size: int, cap: int):
        self.what = what
        self.size = size
        self.cap = cap
        super().__init__(f"{what}: size {size} exceeds cap {cap}")


class GridError(RectvarError):
    """Off-grid corners, dimension mismatch or non-finite grid values."""


class GridFormatError(GridError):
    """Input grid file could not be parsed."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column})" if column is not None else ")")
        super().__init__(f"{message}{where}")


class PartitionError(RectvarError):
    """A rectangle partition is invalid for the requested operation."""


class DomainError(RectvarError):
    """An argument lies outside the mathematical domain of an operation."""


class PreconditionError(RectvarError):
    """Input data violates a precondition (e.g. axes not zeroed)."""

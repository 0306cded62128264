"""Exception taxonomy shared by the library and the CLI."""

from __future__ import annotations


class TorsionLabError(Exception):
    """Base class for all library errors."""


class DimensionError(TorsionLabError):
    """Rank or variable-count mismatch between operands."""


class InputError(TorsionLabError):
    """A precondition on user-supplied data failed."""


class StructuralError(TorsionLabError):
    """A declared structural flag failed its cheap verification."""


class UnsupportedError(TorsionLabError):
    """The operation is outside the supported fragment."""


class DegenerateError(TorsionLabError):
    """The operation is undefined for this degenerate input."""


class ResourceLimitError(TorsionLabError):
    """A configured resource bound (degree cap, resolution bound) was hit."""


class AbortedError(TorsionLabError):
    """Cooperative cancellation was requested."""


class ScriptParseError(TorsionLabError):
    """Syntax or binding error in a script, with source position."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.message = message
        self.line = line
        self.column = column

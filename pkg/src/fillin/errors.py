"""Exception hierarchy.

Format errors derive from ``ValueError`` so callers that only care about
"bad input" can catch that; the CLI maps ``FormatError`` to exit code 2
and ``ShapeError`` to exit code 3.
"""

from __future__ import annotations


class FillInError(Exception):
    """Base class for every error raised by this package."""


class FormatError(FillInError, ValueError):
    """Input bytes do not conform to one of the supported file formats."""


class MalformedHeader(FormatError):
    pass


class NonIntegerToken(FormatError):
    def __init__(self, row: int, col: int, token: str):
        self.row, self.col, self.token = row, col, token
        super().__init__(f"non-integer token {token!r} at ({row},{col})")


class NegativeLabel(FormatError):
    def __init__(self, row: int, col: int, value: int):
        self.row, self.col, self.value = row, col, value
        super().__init__(f"negative label {value} at ({row},{col})")


class LengthMismatch(FormatError):
    def __init__(self, message: str, row: int | None = None, col: int | None = None):
        self.row, self.col = row, col
        where = "" if row is None else f" at ({row},{col if col is not None else '-'})"
        super().__init__(message + where)


class BadMagic(FormatError):
    pass


class DimensionOverflow(FormatError):
    pass


class Truncated(FormatError):
    pass


class TrailingBytes(FormatError):
    pass


class NonFinite(FormatError):
    def __init__(self, index: int):
        self.index = index
        super().__init__(f"non-finite value at flat index {index}")


class ShapeError(FillInError, ValueError):
    """Operands have incompatible dimensions."""


class UnknownLabel(FillInError, KeyError):
    """A label map holds a label the appearance signal was not computed for."""

    def __init__(self, label: int):
        self.label = label
        super().__init__(label)

    def __str__(self) -> str:
        return f"label {self.label} is not in the appearance signal domain"

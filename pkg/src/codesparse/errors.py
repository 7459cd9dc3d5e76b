"""Exception types shared by the engine and the command line."""

from __future__ import annotations


class CodeSparseError(Exception):
    """Base class for all library errors."""


class LengthMismatch(CodeSparseError, ValueError):
    pass


class CapExceeded(CodeSparseError):
    """An enumeration would exceed its configured cap."""

    kind = "CAP_EXCEEDED"

    def __init__(self, value: int, cap: int, what: str):
        super().__init__(f"{self.kind}: {what} = {value} exceeds cap {cap}")
        self.value = value
        self.cap = cap


class DimensionTooLarge(CapExceeded):
    kind = "DIMENSION_TOO_LARGE"


class LengthTooLarge(CapExceeded):
    kind = "LENGTH_TOO_LARGE"


class DomainError(CodeSparseError, ValueError):
    pass


class ParseError(CodeSparseError, ValueError):
    def __init__(self, message: str, line: int, column: int | None = None):
        where = f"line {line}" if column is None else f"line {line}, column {column}"
        super().__init__(f"PARSE_ERROR at {where}: {message}")
        self.line = line
        self.column = column


class SearchFailed(CodeSparseError):
    """A heuristic search exhausted its restarts (never a nonexistence claim)."""

    def __init__(self, message: str, round_index: int | None = None):
        super().__init__(message)
        self.round_index = round_index


class TheoremViolation(CodeSparseError, AssertionError):
    """A mathematically guaranteed bound failed. Carries a JSON-ready witness."""

    def __init__(self, message: str, witness: dict):
        super().__init__(message)
        self.witness = witness

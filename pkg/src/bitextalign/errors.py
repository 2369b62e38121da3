"""Exception types shared across the package."""

from __future__ import annotations


class BitextError(Exception):
    """Base class for expected failures (bad input, bad file, bad config)."""


class FormatError(BitextError):
    """A data file does not conform to its documented format."""

    def __init__(self, message: str, path: str | None = None, line: int | None = None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}: "
        if line is not None:
            where += f"line {line}: "
        super().__init__(where + message)


class MarkupError(BitextError):
    """Malformed passage markup; carries the 1-based line/column of the fault."""

    def __init__(self, message: str, line: int, column: int):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class MismatchedDocumentsError(BitextError):
    """Two alignments being compared do not cover the same documents."""

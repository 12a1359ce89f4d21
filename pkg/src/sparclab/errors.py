"""Error types and diagnostics shared across the toolkit."""

from __future__ import annotations

from dataclasses import dataclass


class SparcError(Exception):
    """Root of all errors raised by this package."""

    code = "Error"


@dataclass(frozen=True)
class Diagnostic:
    """One reportable problem, addressable by source position.

    Serialized as a line/column/severity/message record (plus a stable
    machine-readable code) wherever diagnostics cross a process boundary.
    """

    code: str
    line: int
    column: int
    message: str
    severity: str = "error"

    def to_record(self) -> dict:
        return {
            "code": self.code,
            "line": self.line,
            "column": self.column,
            "severity": self.severity,
            "message": self.message,
        }

    def __str__(self) -> str:
        return f"{self.line}:{self.column}: {self.severity}: {self.message} [{self.code}]"


def sort_diagnostics(diagnostics: list[Diagnostic]) -> list[Diagnostic]:
    """Canonical reporting order: by position, then code, then message."""
    return sorted(diagnostics, key=lambda d: (d.line, d.column, d.code, d.message))


class LexError(SparcError):
    code = "LexError"

    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column
        self.message = message

    def to_diagnostic(self) -> Diagnostic:
        return Diagnostic(self.code, self.line, self.column, self.message)


class ParseError(SparcError):
    code = "ParseError"

    def __init__(self, line: int, column: int, expected: str, found: str):
        super().__init__(f"{line}:{column}: expected {expected}, found {found}")
        self.line = line
        self.column = column
        self.expected = expected
        self.found = found

    def to_diagnostic(self) -> Diagnostic:
        return Diagnostic(self.code, self.line, self.column, f"expected {self.expected}, found {self.found}")


class MissingSectionError(ParseError):
    code = "MissingSection"

    def __init__(self, line: int, column: int, section: str, found: str):
        super().__init__(line, column, f"'{section}' section keyword", found)
        self.section = section


class SortCheckError(SparcError):
    """Sort checking failed; carries the full diagnostic list in report order."""

    code = "SortCheckError"

    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = sort_diagnostics(diagnostics)
        summary = "; ".join(str(d) for d in self.diagnostics[:3])
        extra = len(self.diagnostics) - 3
        if extra > 0:
            summary += f" (+{extra} more)"
        super().__init__(summary)


class UnknownSortError(SparcError):
    code = "UnknownSort"


class ArithmeticTypeError(SparcError, TypeError):
    """Arithmetic over a symbolic constant. Subclasses TypeError on purpose."""

    code = "ArithmeticTypeError"


class GroundingLimitExceededError(SparcError):
    code = "GroundingLimitExceeded"


class SortMismatchAtGroundingError(SparcError):
    code = "SortMismatchAtGrounding"


class SearchBudgetExceededError(SparcError):
    code = "SearchBudgetExceeded"


class OracleTooLargeError(SparcError):
    code = "OracleTooLarge"


class NoAnswerSetsError(SparcError):
    code = "NoAnswerSets"


class MultipleAnswerSetsError(SparcError):
    code = "MultipleAnswerSets"

    def __init__(self, count: int, truncated: bool = False):
        plus = "+" if truncated else ""
        super().__init__(f"program has {count}{plus} answer sets; execute requires exactly one")
        self.count = count


class DisplayValidationError(SparcError):
    """Display atoms used incorrectly; diagnostics detail each misuse."""

    code = "DisplayValidationError"

    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = sort_diagnostics(diagnostics)
        super().__init__("; ".join(d.message for d in self.diagnostics))


class WorkspaceError(SparcError):
    code = "WorkspaceError"


class NotFoundError(WorkspaceError):
    code = "NotFound"


class NotOwnerError(WorkspaceError):
    code = "NotOwner"


class NameConflictError(WorkspaceError):
    code = "NameConflict"


class InvalidNameError(WorkspaceError):
    code = "InvalidName"


class DuplicateUserError(WorkspaceError):
    code = "DuplicateUser"


class BadCredentialsError(WorkspaceError):
    code = "BadCredentials"

"""Diagnostic records shared by the parser, the report builder and the fixer."""

from __future__ import annotations

from dataclasses import dataclass

WARNING = "warning"
ERROR = "error"
EXCEPTION = "exception"
SEVERITIES = (WARNING, ERROR, EXCEPTION)

# categories visible in reports
EXTRANEOUS_INPUT = "extraneous_input"
MISMATCHED_INPUT = "mismatched_input"
TOKEN_RECOGNITION = "token_recognition"
TAB_ON_BLANK_LINE = "tab_on_blank_line"
INDENTATION = "indentation"
ENCODING = "encoding"
DUPLICATE_FEATURE = "duplicate_feature"
UNKNOWN_REFERENCE = "unknown_reference"
IO = "io"
# internal only; classify_parse_failure maps it to MISMATCHED_INPUT
BLANK_LINE = "blank_line"

CATEGORIES = (
    EXTRANEOUS_INPUT,
    MISMATCHED_INPUT,
    TOKEN_RECOGNITION,
    BLANK_LINE,
    TAB_ON_BLANK_LINE,
    INDENTATION,
    ENCODING,
    DUPLICATE_FEATURE,
    UNKNOWN_REFERENCE,
    IO,
)


@dataclass(frozen=True)
class Diagnostic:
    severity: str
    category: str
    line: int | None
    column: int | None
    message: str
    offending: str = ""

    def __post_init__(self) -> None:
        if self.severity not in SEVERITIES:
            raise ValueError(f"unknown severity {self.severity!r}")
        if self.category not in CATEGORIES:
            raise ValueError(f"unknown category {self.category!r}")

    def sort_key(self) -> tuple[int, int, str]:
        return (self.line or 0, self.column or 0, self.category)

    def to_dict(self) -> dict:
        return {
            "severity": self.severity,
            "category": self.category,
            "line": self.line,
            "column": self.column,
            "message": self.message,
            "offending": self.offending,
        }


def sort_diagnostics(diagnostics) -> list[Diagnostic]:
    """Order by line, then column, then category name (unlocated first)."""
    return sorted(diagnostics, key=Diagnostic.sort_key)

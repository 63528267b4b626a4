"""Error and warning values shared by the lexer, parser, and code generator.

A Diagnostic carries a severity, a machine-readable kind, a human message,
and the source span it points at. All stages report problems through this
one currency; the CLI renders them to stderr.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class Severity(Enum):
    ERROR = "error"
    WARNING = "warning"


class DiagnosticKind(Enum):
    LEX_ERROR = "LexError"
    UNEXPECTED_TOKEN = "UnexpectedToken"
    UNBALANCED_DELIMITER = "UnbalancedDelimiter"
    UNBALANCED_SCOPE = "UnbalancedScope"
    MISSING_APPLY = "MissingApply"
    EMPTY_EXPRESSION = "EmptyExpression"
    BAD_ARGUMENT = "BadArgument"
    UNSUPPORTED_CONSTRUCT = "UnsupportedConstruct"
    INDETERMINATE_TYPE = "IndeterminateType"


@dataclass(frozen=True)
class SourceSpan:
    """Half-open character range [start_offset, end_offset) plus the 1-based
    line/column of its first character."""

    start_offset: int
    end_offset: int
    line: int
    column: int

    def __len__(self) -> int:
        return max(self.end_offset - self.start_offset, 0)


@dataclass(frozen=True)
class Diagnostic:
    severity: Severity
    kind: DiagnosticKind
    message: str
    span: SourceSpan


class BadArgumentError(Exception):
    """Raised where a gate lowering receives an argument outside its contract,
    e.g. a measurement basis that is not PauliX/PauliY/PauliZ."""

    def __init__(self, diagnostic: Diagnostic):
        super().__init__(diagnostic.message)
        self.diagnostic = diagnostic


def error(kind: DiagnosticKind, message: str, span: SourceSpan) -> Diagnostic:
    return Diagnostic(Severity.ERROR, kind, message, span)


def warning(kind: DiagnosticKind, message: str, span: SourceSpan) -> Diagnostic:
    return Diagnostic(Severity.WARNING, kind, message, span)


def render(diagnostic: Diagnostic, source: str) -> str:
    """Render one diagnostic as

        severity[kind] line:col: message
            <offending source line>
            <caret underline>

    The caret run covers the span, clipped to the offending line.
    """
    d = diagnostic
    header = f"{d.severity.value}[{d.kind.value}] {d.span.line}:{d.span.column}: {d.message}"
    lines = source.splitlines()
    if not lines:
        return header
    line_index = min(d.span.line - 1, len(lines) - 1)
    src_line = lines[line_index]
    width = max(min(len(d.span), len(src_line) - (d.span.column - 1)), 1)
    underline = " " * (d.span.column - 1) + "^" * width
    return f"{header}\n    {src_line}\n    {underline}"


def render_all(diagnostics: list[Diagnostic], source: str) -> str:
    """Render a report with diagnostics ordered by span start."""
    ordered = sorted(diagnostics, key=lambda d: d.span.start_offset)
    return "\n".join(render(d, source) for d in ordered)

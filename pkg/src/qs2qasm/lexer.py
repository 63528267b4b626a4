"""Lexer: translate Q# source text into an ordered token sequence.

Tokens carry exact source spans (the span slice equals the lexeme), so the
original text is recoverable from the token stream plus the inter-token
gaps. Operators obey maximal munch: `&&&` is one token, never three `&`.
"""

from __future__ import annotations

import bisect
import re

from .diagnostics import Diagnostic, DiagnosticKind, SourceSpan, error
from .tokens import OPERATORS, Token, TokenKind, classify_word

_WHITESPACE_RE = re.compile(r"[ \t\r\n]+")
_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_COMMENT_RE = re.compile(r"//[^\n]*")
_STRING_RE = re.compile(r'"(?:\\.|[^"\\\n])*"')

# Operators grouped by length so the longest candidate is tried first.
_OPS_BY_LENGTH = sorted(
    ((lexeme, kind) for lexeme, kind in OPERATORS.items() if lexeme != "w/"),
    key=lambda item: -len(item[0]),
)


class Lexer:
    def __init__(self, source: str):
        self.source = source
        self.pos = 0
        self.tokens: list[Token] = []
        self.diagnostics: list[Diagnostic] = []
        # Offsets of line starts, for O(log n) line/column lookup.
        self._line_starts = [0]
        for i, ch in enumerate(source):
            if ch == "\n":
                self._line_starts.append(i + 1)

    def span(self, start: int, end: int) -> SourceSpan:
        line = bisect.bisect_right(self._line_starts, start)
        column = start - self._line_starts[line - 1] + 1
        return SourceSpan(start, end, line, column)

    def _emit(self, kind: TokenKind, start: int, end: int) -> None:
        self.tokens.append(Token(kind, self.source[start:end], self.span(start, end)))
        self.pos = end

    def _error(self, kind: DiagnosticKind, message: str, start: int, end: int) -> None:
        self.diagnostics.append(error(kind, message, self.span(start, end)))

    def tokenize(self) -> list[Token]:
        src = self.source
        n = len(src)
        while self.pos < n:
            ws = _WHITESPACE_RE.match(src, self.pos)
            if ws:
                self.pos = ws.end()
                continue
            start = self.pos
            ch = src[start]
            if ch == "/" and src.startswith("//", start):
                m = _COMMENT_RE.match(src, start)
                self._emit(TokenKind.Comment, start, m.end())
            elif ch == '"':
                self._lex_string(start)
            elif ch.isdigit():
                self._lex_number(start)
            elif ch.isalpha() or ch == "_":
                self._lex_word(start)
            else:
                for lexeme, kind in _OPS_BY_LENGTH:
                    if src.startswith(lexeme, start):
                        self._emit(kind, start, start + len(lexeme))
                        break
                else:
                    self._error(
                        DiagnosticKind.LEX_ERROR,
                        f"illegal character {ch!r}",
                        start, start + 1,
                    )
                    self.pos = start + 1
        self.tokens.append(Token(TokenKind.EndOfFile, "", self.span(n, n)))
        return self.tokens

    def _lex_string(self, start: int) -> None:
        m = _STRING_RE.match(self.source, start)
        if m:
            self._emit(TokenKind.String, start, m.end())
            return
        # No closing quote on this line: report and resynchronize at the
        # newline (or end of input).
        end = self.source.find("\n", start)
        if end == -1:
            end = len(self.source)
        self._error(DiagnosticKind.LEX_ERROR, "unterminated string literal", start, end)
        self.pos = end

    def _lex_number(self, start: int) -> None:
        src = self.source
        n = len(src)
        pos = start
        while pos < n and src[pos].isdigit():
            pos += 1
        is_double = False
        # A dot continues the number only when it is not the start of a
        # range operator (`1..5` is Int DotDot Int).
        if pos < n and src[pos] == "." and not src.startswith("..", pos):
            is_double = True
            pos += 1
            while pos < n and src[pos].isdigit():
                pos += 1
        if pos < n and src[pos] in "eE":
            exp = pos + 1
            if exp < n and src[exp] in "+-":
                exp += 1
            if exp < n and src[exp].isdigit():
                is_double = True
                pos = exp
                while pos < n and src[pos].isdigit():
                    pos += 1
        if is_double:
            self._emit(TokenKind.Double, start, pos)
        elif pos < n and src[pos] == "L":
            self._emit(TokenKind.BigInt, start, pos + 1)
        else:
            self._emit(TokenKind.Int, start, pos)

    def _lex_word(self, start: int) -> None:
        m = _IDENT_RE.match(self.source, start)
        word = m.group()
        # The copy-and-update operator `w/` starts with an identifier
        # character; `w//...` is still identifier + comment.
        if word == "w" and self.source.startswith("/", m.end()) and not self.source.startswith("//", m.end()):
            self._emit(TokenKind.CopyUpdate, start, m.end() + 1)
            return
        self._emit(classify_word(word), start, m.end())


def tokenize(source: str) -> tuple[list[Token], list[Diagnostic]]:
    """Tokenize `source`. Returns the token sequence (terminated by
    EndOfFile) together with any lexing diagnostics; on error the tokens
    produced up to and past the error point are still returned."""
    lexer = Lexer(source)
    return lexer.tokenize(), lexer.diagnostics

"""Token kinds, the Token value, and token-category predicates.

Enum members are named the way they print in token dumps (`BitwiseAnd`,
`ShiftLeft`, ...), so `kind.name` is the wire spelling.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum, auto

from .diagnostics import SourceSpan


class TokenKind(Enum):
    # Keywords
    Operation = auto()
    Function = auto()
    Use = auto()
    Borrow = auto()
    Let = auto()
    Mutable = auto()
    Set = auto()
    If = auto()
    Elif = auto()
    Else = auto()
    For = auto()
    In = auto()
    While = auto()
    Repeat = auto()
    Until = auto()
    Fixup = auto()
    Within = auto()
    Apply = auto()
    Return = auto()
    Fail = auto()
    Import = auto()
    Open = auto()
    Namespace = auto()
    Struct = auto()
    New = auto()
    Is = auto()
    Adjoint = auto()
    Controlled = auto()
    And = auto()
    Or = auto()
    Not = auto()
    # Bitwise operators
    BitwiseAnd = auto()     # &&&
    BitwiseOr = auto()      # |||
    BitwiseXor = auto()     # ^^^
    BitwiseNot = auto()     # ~~~
    ShiftLeft = auto()      # <<<
    ShiftRight = auto()     # >>>
    # Comparison
    Equality = auto()       # ==
    Inequality = auto()     # !=
    Less = auto()           # <
    LessEq = auto()         # <=
    Greater = auto()        # >
    GreaterEq = auto()      # >=
    # Arithmetic
    Plus = auto()
    Minus = auto()
    Star = auto()
    Slash = auto()
    Percent = auto()
    Caret = auto()
    # Assignment and arrows
    Assign = auto()         # =
    FatArrow = auto()       # =>
    Arrow = auto()          # ->
    BackArrow = auto()      # <-
    CopyUpdate = auto()     # w/
    # Ranges and member access
    DotDot = auto()         # ..
    Ellipsis = auto()       # ...
    Dot = auto()            # . (qualified names)
    # Delimiters
    LParen = auto()
    RParen = auto()
    LBracket = auto()
    RBracket = auto()
    LBrace = auto()
    RBrace = auto()
    Comma = auto()
    Colon = auto()
    Semicolon = auto()
    # Literals
    Int = auto()
    BigInt = auto()
    Double = auto()
    String = auto()
    Bool = auto()
    Pauli = auto()
    Result = auto()
    # Everything else
    Identifier = auto()
    Comment = auto()
    EndOfFile = auto()


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    lexeme: str
    span: SourceSpan

    def __repr__(self) -> str:
        return f"Token({self.kind.name}, {self.lexeme!r}, {self.span.line}:{self.span.column})"


KEYWORDS: dict[str, TokenKind] = {
    "operation": TokenKind.Operation,
    "function": TokenKind.Function,
    "use": TokenKind.Use,
    "borrow": TokenKind.Borrow,
    "let": TokenKind.Let,
    "mutable": TokenKind.Mutable,
    "set": TokenKind.Set,
    "if": TokenKind.If,
    "elif": TokenKind.Elif,
    "else": TokenKind.Else,
    "for": TokenKind.For,
    "in": TokenKind.In,
    "while": TokenKind.While,
    "repeat": TokenKind.Repeat,
    "until": TokenKind.Until,
    "fixup": TokenKind.Fixup,
    "within": TokenKind.Within,
    "apply": TokenKind.Apply,
    "return": TokenKind.Return,
    "fail": TokenKind.Fail,
    "import": TokenKind.Import,
    "open": TokenKind.Open,
    "namespace": TokenKind.Namespace,
    "struct": TokenKind.Struct,
    "new": TokenKind.New,
    "is": TokenKind.Is,
    "Adjoint": TokenKind.Adjoint,
    "Controlled": TokenKind.Controlled,
    "and": TokenKind.And,
    "or": TokenKind.Or,
    "not": TokenKind.Not,
}

BOOL_LITERALS = ("true", "false")
PAULI_LITERALS = ("PauliI", "PauliX", "PauliY", "PauliZ")
RESULT_LITERALS = ("Zero", "One")

# Operator table, single source of truth for maximal munch. `w/` is listed
# here for completeness but is recognized through the identifier path (its
# first character is identifier-shaped).
OPERATORS: dict[str, TokenKind] = {
    "&&&": TokenKind.BitwiseAnd,
    "|||": TokenKind.BitwiseOr,
    "^^^": TokenKind.BitwiseXor,
    "~~~": TokenKind.BitwiseNot,
    "<<<": TokenKind.ShiftLeft,
    ">>>": TokenKind.ShiftRight,
    "...": TokenKind.Ellipsis,
    "==": TokenKind.Equality,
    "!=": TokenKind.Inequality,
    "<=": TokenKind.LessEq,
    ">=": TokenKind.GreaterEq,
    "=>": TokenKind.FatArrow,
    "->": TokenKind.Arrow,
    "<-": TokenKind.BackArrow,
    "..": TokenKind.DotDot,
    "w/": TokenKind.CopyUpdate,
    "+": TokenKind.Plus,
    "-": TokenKind.Minus,
    "*": TokenKind.Star,
    "/": TokenKind.Slash,
    "%": TokenKind.Percent,
    "^": TokenKind.Caret,
    "=": TokenKind.Assign,
    "<": TokenKind.Less,
    ">": TokenKind.Greater,
    ".": TokenKind.Dot,
    "(": TokenKind.LParen,
    ")": TokenKind.RParen,
    "[": TokenKind.LBracket,
    "]": TokenKind.RBracket,
    "{": TokenKind.LBrace,
    "}": TokenKind.RBrace,
    ",": TokenKind.Comma,
    ":": TokenKind.Colon,
    ";": TokenKind.Semicolon,
}


def classify_word(lexeme: str) -> TokenKind:
    """Classify a maximal identifier-shaped run: keyword, literal word
    (true/false, Pauli*, Zero/One), or plain identifier. Total function."""
    kind = KEYWORDS.get(lexeme)
    if kind is not None:
        return kind
    if lexeme in BOOL_LITERALS:
        return TokenKind.Bool
    if lexeme in PAULI_LITERALS:
        return TokenKind.Pauli
    if lexeme in RESULT_LITERALS:
        return TokenKind.Result
    return TokenKind.Identifier


_LITERAL_KINDS = frozenset({
    TokenKind.Int,
    TokenKind.BigInt,
    TokenKind.Double,
    TokenKind.String,
    TokenKind.Bool,
    TokenKind.Pauli,
    TokenKind.Result,
})

# Kinds that may occur inside an Expression. Structure keywords (operation,
# function, for, while, use, ...) are deliberately absent; the logical word
# operators and/or/not are included because conditions use them.
EXPRESSION_KINDS = _LITERAL_KINDS | frozenset({
    TokenKind.Identifier,
    TokenKind.Plus,
    TokenKind.Minus,
    TokenKind.Star,
    TokenKind.Slash,
    TokenKind.Percent,
    TokenKind.Caret,
    TokenKind.BitwiseAnd,
    TokenKind.BitwiseOr,
    TokenKind.BitwiseXor,
    TokenKind.BitwiseNot,
    TokenKind.ShiftLeft,
    TokenKind.ShiftRight,
    TokenKind.Equality,
    TokenKind.Inequality,
    TokenKind.Less,
    TokenKind.LessEq,
    TokenKind.Greater,
    TokenKind.GreaterEq,
    TokenKind.LParen,
    TokenKind.RParen,
    TokenKind.LBracket,
    TokenKind.RBracket,
    TokenKind.DotDot,
    TokenKind.Ellipsis,
    TokenKind.Dot,
    TokenKind.Comma,
    TokenKind.And,
    TokenKind.Or,
    TokenKind.Not,
})

# Kinds that may stand as a Parameter atom: names, literals, range dots,
# brackets. Not disjoint from EXPRESSION_KINDS by design.
PARAMETER_KINDS = _LITERAL_KINDS | frozenset({
    TokenKind.Identifier,
    TokenKind.DotDot,
    TokenKind.Ellipsis,
    TokenKind.LBracket,
    TokenKind.RBracket,
})


def is_expression_token(kind: TokenKind) -> bool:
    return kind in EXPRESSION_KINDS


def is_parameter_token(kind: TokenKind) -> bool:
    return kind in PARAMETER_KINDS

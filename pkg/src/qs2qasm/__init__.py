"""qs2qasm: a Q# frontend and OpenQASM 3.0 code generator.

The three stages can be used independently:

    >>> from qs2qasm import tokenize, parse_source, compile_source
    >>> tokens, _ = tokenize("X(q);")
    >>> program, _ = parse_source("use q = Qubit(); X(q);")
    >>> qasm, _ = compile_source("use q = Qubit(); X(q);")
"""

from .ast_nodes import Program, repr_of, serialize_ast
from .compiler import Compiler, CodegenContext, compile_program, infer_width
from .diagnostics import BadArgumentError, Diagnostic, DiagnosticKind, Severity, SourceSpan
from .lexer import Lexer, tokenize
from .parser import Parser, parse_program
from .tokens import Token, TokenKind, classify_word, is_expression_token, is_parameter_token

__version__ = "0.1.0"


def parse_source(source: str):
    """Lex and parse `source`; returns (Program, diagnostics)."""
    tokens, lex_diags = tokenize(source)
    program, parse_diags = parse_program(tokens)
    return program, lex_diags + parse_diags


def compile_source(source: str, *, prelude: bool = True, qelib_compat: bool = False):
    """Run the full pipeline on `source`; returns (qasm text, diagnostics)."""
    program, diagnostics = parse_source(source)
    qasm, codegen_diags = compile_program(
        program, prelude=prelude, qelib_compat=qelib_compat)
    return qasm, diagnostics + codegen_diags


__all__ = [
    "BadArgumentError",
    "CodegenContext",
    "Compiler",
    "Diagnostic",
    "DiagnosticKind",
    "Lexer",
    "Parser",
    "Program",
    "Severity",
    "SourceSpan",
    "Token",
    "TokenKind",
    "classify_word",
    "compile_program",
    "compile_source",
    "infer_width",
    "is_expression_token",
    "is_parameter_token",
    "parse_program",
    "parse_source",
    "repr_of",
    "serialize_ast",
    "tokenize",
]

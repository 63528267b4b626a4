"""Compiler driver: read a Q# file, run the lex/parse/compile pipeline,
emit the selected artifact, and optionally report per-stage timings.

Exit status: 0 on success, 1 when any error-severity diagnostic was
produced, 2 on I/O failure.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass

from .ast_nodes import serialize_ast
from .compiler import Compiler
from .diagnostics import Severity, render_all
from .lexer import tokenize
from .parser import parse_program
from .tokens import TokenKind


@dataclass
class DriverConfig:
    input_path: str
    emit: str = "qasm"  # tokens | ast | qasm
    output_path: str | None = None
    timings: bool = False
    no_prelude: bool = False
    compat_qelib: bool = False


def _dump_tokens(tokens) -> str:
    lines = [
        f"{token.kind.name}\t{token.lexeme}\t{token.span.line}:{token.span.column}"
        for token in tokens
        if token.kind is not TokenKind.EndOfFile
    ]
    return "\n".join(lines) + ("\n" if lines else "")


def run(config: DriverConfig) -> int:
    try:
        with open(config.input_path, encoding="utf-8") as handle:
            source = handle.read()
    except OSError as exc:
        print(f"error: cannot read {config.input_path}: {exc}", file=sys.stderr)
        return 2

    need_parse = config.timings or config.emit in ("ast", "qasm")
    need_compile = config.timings or config.emit == "qasm"

    start = time.perf_counter()
    tokens, diagnostics = tokenize(source)
    lex_ms = (time.perf_counter() - start) * 1000.0

    parse_ms = compile_ms = 0.0
    program = None
    qasm = ""
    if need_parse:
        start = time.perf_counter()
        program, parse_diags = parse_program(tokens)
        parse_ms = (time.perf_counter() - start) * 1000.0
        diagnostics += parse_diags
    if need_compile:
        compiler = Compiler(prelude=not config.no_prelude,
                            qelib_compat=config.compat_qelib)
        start = time.perf_counter()
        qasm = compiler.compile(program)
        compile_ms = (time.perf_counter() - start) * 1000.0
        diagnostics += compiler.diagnostics

    if config.emit == "tokens":
        artifact = _dump_tokens(tokens)
    elif config.emit == "ast":
        artifact = serialize_ast(program) + "\n"
    else:
        artifact = qasm

    try:
        if config.output_path:
            with open(config.output_path, "w", encoding="utf-8") as handle:
                handle.write(artifact)
        else:
            sys.stdout.write(artifact)
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return 2

    if diagnostics:
        print(render_all(diagnostics, source), file=sys.stderr)
    if config.timings:
        total_ms = lex_ms + parse_ms + compile_ms
        print(f"lexing: {lex_ms:.2f} ms", file=sys.stderr)
        print(f"parsing: {parse_ms:.2f} ms", file=sys.stderr)
        print(f"compilation: {compile_ms:.2f} ms", file=sys.stderr)
        print(f"total: {total_ms:.2f} ms", file=sys.stderr)

    if any(d.severity is Severity.ERROR for d in diagnostics):
        return 1
    return 0


def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qs2qasm",
        description="Compile Q# source to OpenQASM 3.0 "
                    "(or dump the token stream / AST).",
    )
    parser.add_argument("input", help="Q# source file")
    parser.add_argument("--emit", choices=["tokens", "ast", "qasm"],
                        default="qasm", help="artifact to emit (default: qasm)")
    parser.add_argument("-o", "--output", default=None,
                        help="write the artifact here instead of stdout")
    parser.add_argument("--timings", action="store_true",
                        help="report per-stage wall-clock timings on stderr")
    parser.add_argument("--no-prelude", action="store_true",
                        help="omit the OPENQASM header, include, and bit declaration")
    parser.add_argument("--compat", choices=["qelib"], default=None,
                        help="emit gate definitions for qelib1-era names "
                             "(u1/u2/u3) in the prelude")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_arg_parser().parse_args(argv)
    config = DriverConfig(
        input_path=args.input,
        emit=args.emit,
        output_path=args.output,
        timings=args.timings,
        no_prelude=args.no_prelude,
        compat_qelib=args.compat == "qelib",
    )
    return run(config)


if __name__ == "__main__":
    sys.exit(main())

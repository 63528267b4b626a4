"""Recursive descent parser: token sequence in, AST out.

Each braced scope is parsed by a child Parser instance that owns its token
range and its own symbol table (lexical lookup falls back to the parent),
so references resolve to variables only when a `let`/`mutable` binding is
in scope. `parse_node` dispatches every construct to its parsing routine;
after an error the parser resynchronizes at the next statement boundary
(`;` or `}`) and keeps going.
"""

from __future__ import annotations

from .ast_nodes import (
    CCNOT, CNOT, CZ, SWAP,
    ArbitraryUnitary, AstNode, BigIntLiteral, BoolLiteral, CallableDecl,
    Comment, Conjugation, ControlledX, DoubleLiteral, ElifClause, Expression,
    Fail, ForLoop, FunctionCall, H, I, IdentifierRef, If, Import, IndexAccess,
    IntLiteral, LetBinding, M, Measure, MutableBinding, NonIntrinsicCall,
    OperatorAtom, Parameter, Pauli, PauliLiteral, Program, QubitAllocation,
    QubitArraySpec, R, R1, R1Frac, RFrac, RangeParam, RepeatUntilFixup,
    Reset, ResetAll, ResultLiteral, Return, Rx, Rxx, Ry, Ryy, Rz, Rzz, S,
    SetAssignment, StringLiteral, Struct, SubExpression, T, TypeRef,
    VariableRef, WhileLoop, X, Y, Z,
)
from .diagnostics import Diagnostic, DiagnosticKind, SourceSpan, error
from .tokens import Token, TokenKind

_K = TokenKind

_BINDING_KEYWORDS = frozenset({
    _K.Let, _K.Mutable, _K.Set, _K.Return, _K.Fail, _K.If, _K.Import,
    _K.Open, _K.Struct,
})

_OPERATOR_ATOM_KINDS = frozenset({
    _K.Plus, _K.Minus, _K.Star, _K.Slash, _K.Percent, _K.Caret,
    _K.BitwiseAnd, _K.BitwiseOr, _K.BitwiseXor, _K.BitwiseNot,
    _K.ShiftLeft, _K.ShiftRight,
    _K.Equality, _K.Inequality, _K.Less, _K.LessEq, _K.Greater, _K.GreaterEq,
    _K.Dot, _K.Comma,
})

# Intrinsic gate signatures: one letter per argument.
#   q qubit-shaped (name or index), a angle (any expression), p Pauli
#   literal, i integer literal
_GATE_SIGNATURES = {
    "X": (X, "q"), "Y": (Y, "q"), "Z": (Z, "q"), "H": (H, "q"),
    "S": (S, "q"), "T": (T, "q"), "I": (I, "q"),
    "Reset": (Reset, "q"), "ResetAll": (ResetAll, "q"), "M": (M, "q"),
    "CNOT": (CNOT, "qq"), "CZ": (CZ, "qq"), "SWAP": (SWAP, "qq"),
    "CCNOT": (CCNOT, "qqq"),
    "Rx": (Rx, "aq"), "Ry": (Ry, "aq"), "Rz": (Rz, "aq"), "R1": (R1, "aq"),
    "R": (R, "paq"),
    "RFrac": (RFrac, "piiq"), "R1Frac": (R1Frac, "iiq"),
    "Rxx": (Rxx, "aqq"), "Ryy": (Ryy, "aqq"), "Rzz": (Rzz, "aqq"),
}


def _at(node: AstNode, token: Token) -> AstNode:
    node.span = token.span
    return node


class Parser:
    """One parser instance per scope. `tokens` must end with EndOfFile."""

    def __init__(self, tokens: list[Token], *, scope_kind: str = "top",
                 parent: "Parser | None" = None,
                 diagnostics: list[Diagnostic] | None = None):
        self.tokens = tokens
        self.cursor = 0
        self.scope_kind = scope_kind
        self.parent = parent
        self.symbols: dict[str, str] = {}
        self.diagnostics = diagnostics if diagnostics is not None else []

    # -- token plumbing -----------------------------------------------------

    def peek(self, offset: int = 0) -> Token:
        index = self.cursor + offset
        if index < len(self.tokens):
            return self.tokens[index]
        return self.tokens[-1]

    def advance(self) -> Token:
        token = self.peek()
        if token.kind is not _K.EndOfFile:
            self.cursor += 1
        return token

    def at_end(self) -> bool:
        return self.peek().kind is _K.EndOfFile

    def expect(self, kind: TokenKind, what: str) -> Token | None:
        token = self.peek()
        if token.kind is kind:
            return self.advance()
        self.error(
            DiagnosticKind.UNEXPECTED_TOKEN,
            f"expected {what}, found {token.kind.name}",
            token.span,
        )
        return None

    def accept(self, kind: TokenKind) -> Token | None:
        if self.peek().kind is kind:
            return self.advance()
        return None

    def error(self, kind: DiagnosticKind, message: str,
              span: SourceSpan | None = None) -> None:
        self.diagnostics.append(error(kind, message, span or self.peek().span))

    def recover(self) -> None:
        """Skip to the next statement boundary: past a `;`, or up to a `}`
        (left for the enclosing scope), or end of input."""
        while not self.at_end():
            kind = self.peek().kind
            if kind is _K.Semicolon:
                self.advance()
                return
            if kind is _K.RBrace:
                return
            self.advance()

    # -- symbols ------------------------------------------------------------

    def declare(self, name: str, kind: str) -> None:
        self.symbols[name] = kind

    def lookup(self, name: str) -> str | None:
        scope: Parser | None = self
        while scope is not None:
            if name in scope.symbols:
                return scope.symbols[name]
            scope = scope.parent
        return None

    def _name_param(self, name: str) -> Parameter:
        if self.lookup(name) == "variable":
            return VariableRef(name)
        return IdentifierRef(name)

    # -- statement dispatch ---------------------------------------------------

    def parse_nodes(self) -> list[AstNode]:
        nodes: list[AstNode] = []
        while not self.at_end():
            before = self.cursor
            nodes.extend(self.parse_node())
            if self.cursor == before and not self.at_end():
                # Safety net: the error path must always make progress.
                self.advance()
        return nodes

    def parse_node(self) -> list[AstNode]:
        token = self.peek()
        kind = token.kind
        if kind is _K.Comment:
            self.advance()
            return [_at(Comment(token.lexeme[2:]), token)]
        if kind in (_K.Operation, _K.Function):
            node = self.parse_callable()
            return [node] if node else []
        if kind in (_K.Use, _K.Borrow):
            node = self.parse_allocation()
            return [node] if node else []
        if kind is _K.Within:
            return [self.parse_conjugation()]
        if kind in (_K.For, _K.While, _K.Repeat):
            node = self.parse_loop()
            return [node] if node else []
        if kind in _BINDING_KEYWORDS:
            node = self.parse_binding()
            return [node] if node else []
        if kind is _K.Namespace:
            return self._parse_namespace()
        if kind in (_K.Identifier, _K.Adjoint, _K.Controlled):
            node = self.parse_gate_application()
            return [node] if node else []
        if kind is _K.Semicolon:  # stray empty statement
            self.advance()
            return []
        if kind is _K.RBrace:
            self.error(DiagnosticKind.UNBALANCED_SCOPE, "unmatched closing brace")
            self.advance()
            return []
        self.error(
            DiagnosticKind.UNEXPECTED_TOKEN,
            f"unexpected {kind.name} at start of statement; expected a "
            "declaration, statement keyword, or gate application",
        )
        self.recover()
        return []

    # -- expressions ----------------------------------------------------------

    def parse_expression(self, terminators: frozenset | set,
                         allow_empty: bool = False) -> Expression:
        """Consume tokens up to (not including) the first terminator at
        nesting depth zero, building a flat element list. Range dots found
        at depth zero fold the whole sequence into a single Range atom."""
        elements: list[Parameter] = []
        dot_positions: list[int] = []
        start = self.peek()
        depth = 0
        while True:
            token = self.peek()
            kind = token.kind
            if kind is _K.EndOfFile:
                break
            if depth == 0 and kind in terminators:
                break
            if kind is _K.Identifier:
                elements.append(self._parse_name_atom())
            elif kind is _K.Int:
                self.advance()
                elements.append(IntLiteral(int(token.lexeme)))
            elif kind is _K.BigInt:
                self.advance()
                elements.append(BigIntLiteral(int(token.lexeme[:-1])))
            elif kind is _K.Double:
                self.advance()
                elements.append(DoubleLiteral(float(token.lexeme)))
            elif kind is _K.String:
                self.advance()
                elements.append(StringLiteral(token.lexeme))
            elif kind is _K.Bool:
                self.advance()
                elements.append(BoolLiteral(token.lexeme == "true"))
            elif kind is _K.Pauli:
                self.advance()
                elements.append(PauliLiteral(Pauli(token.lexeme)))
            elif kind is _K.Result:
                self.advance()
                elements.append(ResultLiteral(token.lexeme))
            elif kind in (_K.DotDot, _K.Ellipsis):
                if depth == 0:
                    dot_positions.append(len(elements))
                self.advance()
                elements.append(OperatorAtom(token.lexeme))
            elif kind in (_K.And, _K.Or, _K.Not):
                # Word operators carry padding so flat concatenation stays
                # unambiguous ("x and y", never "xandy").
                self.advance()
                elements.append(OperatorAtom(token.lexeme, repr=f" {token.lexeme} "))
            elif kind is _K.LParen:
                depth += 1
                self.advance()
                elements.append(OperatorAtom("("))
            elif kind is _K.RParen:
                if depth == 0:
                    self.error(DiagnosticKind.UNBALANCED_DELIMITER,
                               "unmatched ')' in expression")
                    break
                depth -= 1
                self.advance()
                elements.append(OperatorAtom(")"))
            elif kind is _K.LBracket:
                depth += 1
                self.advance()
                elements.append(OperatorAtom("["))
            elif kind is _K.RBracket:
                if depth == 0:
                    self.error(DiagnosticKind.UNBALANCED_DELIMITER,
                               "unmatched ']' in expression")
                    break
                depth -= 1
                self.advance()
                elements.append(OperatorAtom("]"))
            elif kind in _OPERATOR_ATOM_KINDS:
                self.advance()
                elements.append(OperatorAtom(token.lexeme))
            elif kind is _K.Comment:
                self.advance()  # comments inside expressions are dropped
            else:
                if depth == 0:
                    self.error(
                        DiagnosticKind.UNEXPECTED_TOKEN,
                        f"{kind.name} is not allowed inside an expression",
                    )
                break
        if depth != 0:
            self.error(
                DiagnosticKind.UNBALANCED_DELIMITER,
                "unbalanced delimiter in expression",
                start.span,
            )
        if dot_positions:
            elements = self._fold_range(elements, dot_positions)
        if not elements and not allow_empty:
            self.error(DiagnosticKind.EMPTY_EXPRESSION,
                       "expected an expression", start.span)
        return Expression(elements)

    def _parse_name_atom(self) -> Parameter:
        token = self.advance()
        name = token.lexeme
        # Qualified names: open/imported symbols like Std.Math.PI
        while self.peek().kind is _K.Dot and self.peek(1).kind is _K.Identifier:
            self.advance()
            name += "." + self.advance().lexeme
        if self.peek().kind is _K.LParen:
            groups, _ = self.parse_parameters()
            return FunctionCall(name, groups)
        if self.peek().kind is _K.LBracket:
            self.advance()
            index = self.parse_expression({_K.RBracket})
            self.expect(_K.RBracket, "']'")
            return IndexAccess(name, index)
        return self._name_param(name)

    def _fold_range(self, elements: list[Parameter],
                    dot_positions: list[int]) -> list[Parameter]:
        if len(dot_positions) > 2:
            return elements
        separators = [elements[i].repr for i in dot_positions]
        parts: list[list[Parameter]] = []
        previous = 0
        for position in dot_positions:
            parts.append(elements[previous:position])
            previous = position + 1
        parts.append(elements[previous:])
        exprs = [Expression(part) if part else None for part in parts]
        pieces: list[str] = []
        for index, expr in enumerate(exprs):
            pieces.append(expr.repr if expr else "")
            if index < len(separators):
                pieces.append(separators[index])
        text = "".join(pieces)
        if len(separators) == 1:
            lower, step, upper = exprs[0], None, exprs[1]
        else:
            lower, step, upper = exprs
        return [RangeParam(lower=lower, upper=upper, step=step, repr=text)]

    def parse_parameters(self) -> tuple[list[list[Expression]], list[tuple[str, str]]]:
        """Parse a parenthesized group list. Returns one inner expression
        list per comma-separated group (so `()` gives []), plus any
        `name : Type` declarations found, which belong in the symbol table
        rather than in the group reprs."""
        groups: list[list[Expression]] = []
        typed: list[tuple[str, str]] = []
        self.expect(_K.LParen, "'('")
        if self.accept(_K.RParen):
            return groups, typed
        while True:
            expr = self.parse_expression({_K.Comma, _K.Colon, _K.RParen})
            if self.peek().kind is _K.Colon:
                self.advance()
                type_text = self._parse_type_text({_K.Comma, _K.RParen})
                typed.append((expr.repr, type_text))
            groups.append([expr])
            if self.accept(_K.Comma):
                continue
            self.expect(_K.RParen, "')'")
            break
        return groups, typed

    def _parse_type_text(self, stop_kinds: set) -> str:
        """Collect a type annotation as raw text, up to a depth-zero stop
        token. Types are recorded, not interpreted."""
        pieces: list[str] = []
        depth = 0
        while not self.at_end():
            kind = self.peek().kind
            if depth == 0 and kind in stop_kinds:
                break
            if kind in (_K.LParen, _K.LBracket):
                depth += 1
            elif kind in (_K.RParen, _K.RBracket):
                if depth == 0:
                    break
                depth -= 1
            elif kind is _K.LBrace:
                break
            pieces.append(self.advance().lexeme)
            continue
        return "".join(pieces)

    # -- scopes and declarations ----------------------------------------------

    def parse_scope(self, scope_kind: str = "block",
                    symbols: dict[str, str] | None = None) -> list[AstNode]:
        """Parse `{ ... }` with a child parser that owns exactly the tokens
        between the braces; the cursor lands after the matching `}`."""
        lbrace = self.expect(_K.LBrace, "'{'")
        if lbrace is None:
            self.recover()
            return []
        depth = 1
        index = self.cursor
        while index < len(self.tokens):
            kind = self.tokens[index].kind
            if kind is _K.LBrace:
                depth += 1
            elif kind is _K.RBrace:
                depth -= 1
                if depth == 0:
                    break
            elif kind is _K.EndOfFile:
                break
            index += 1
        if depth != 0:
            self.error(DiagnosticKind.UNBALANCED_SCOPE,
                       "missing closing brace for this scope", lbrace.span)
            inner = self.tokens[self.cursor:index]
            self.cursor = index
        else:
            inner = self.tokens[self.cursor:index]
            self.cursor = index + 1
        end = inner[-1].span.end_offset if inner else lbrace.span.end_offset
        eof_span = SourceSpan(end, end, lbrace.span.line, lbrace.span.column)
        child = Parser(
            inner + [Token(_K.EndOfFile, "", eof_span)],
            scope_kind=scope_kind,
            parent=self,
            diagnostics=self.diagnostics,
        )
        if symbols:
            child.symbols.update(symbols)
        return child.parse_nodes()

    def parse_callable(self) -> CallableDecl | None:
        keyword = self.advance()  # operation | function
        name_token = self.expect(_K.Identifier, "callable name")
        if name_token is None:
            self.recover()
            return None
        params, typed = self.parse_parameters()
        return_type = None
        if self.accept(_K.Colon):
            type_text = self._parse_type_text({_K.Is, _K.LBrace})
            if type_text and type_text != "Unit":
                return_type = TypeRef(type_text)
        modifiers: list[str] = []
        if self.accept(_K.Is):
            while not self.at_end() and self.peek().kind is not _K.LBrace:
                token = self.advance()
                if token.kind is not _K.Plus:
                    modifiers.append(token.lexeme)
        self.declare(name_token.lexeme, "callable")
        body = self.parse_scope(
            scope_kind=keyword.lexeme,
            symbols={param_name: "param" for param_name, _ in typed},
        )
        node = CallableDecl(
            kind_tag=keyword.lexeme,
            name=name_token.lexeme,
            params=params,
            nodes=body,
            modifiers=modifiers,
            return_type=return_type,
            param_types=typed,
        )
        return _at(node, keyword)

    def parse_conjugation(self) -> Conjugation:
        keyword = self.advance()  # within
        within = self.parse_scope()
        applies: list[AstNode] = []
        if self.accept(_K.Apply):
            applies = self.parse_scope()
        else:
            self.error(DiagnosticKind.MISSING_APPLY,
                       "expected 'apply' after the within block")
        return _at(Conjugation(within, applies), keyword)

    def parse_loop(self) -> AstNode | None:
        keyword = self.advance()
        if keyword.kind is _K.For:
            variable = self.expect(_K.Identifier, "loop variable")
            if variable is None:
                self.recover()
                return None
            self.expect(_K.In, "'in'")
            vals = self.parse_expression({_K.LBrace})
            inside = self.parse_scope(symbols={variable.lexeme: "iteration"})
            return _at(ForLoop(VariableRef(variable.lexeme), vals, inside), keyword)
        if keyword.kind is _K.While:
            condition = self.parse_expression({_K.LBrace})
            inside = self.parse_scope()
            return _at(WhileLoop(condition, inside), keyword)
        # repeat { body } until cond;  |  repeat { body } until cond fixup { }
        inside = self.parse_scope()
        self.expect(_K.Until, "'until'")
        condition = self.parse_expression({_K.Semicolon, _K.Fixup})
        fixup: list[AstNode] = []
        if self.accept(_K.Fixup):
            fixup = self.parse_scope()
        else:
            self.expect(_K.Semicolon, "';'")
        return _at(RepeatUntilFixup(inside, condition, fixup), keyword)

    def parse_allocation(self) -> QubitAllocation | None:
        keyword = self.advance()  # use | borrow
        name_token = self.expect(_K.Identifier, "qubit binding name")
        if name_token is None or self.expect(_K.Assign, "'='") is None:
            self.recover()
            return None
        ctor = self.peek()
        if ctor.kind is not _K.Identifier or ctor.lexeme != "Qubit":
            self.error(DiagnosticKind.UNEXPECTED_TOKEN,
                       "right-hand side of a qubit allocation must be "
                       "Qubit() or Qubit[n]", ctor.span)
            self.recover()
            return None
        self.advance()
        length: Parameter
        if self.accept(_K.LParen):
            self.expect(_K.RParen, "')'")
            length = IntLiteral(1)
            is_array = False
        elif self.accept(_K.LBracket):
            expr = self.parse_expression({_K.RBracket})
            self.expect(_K.RBracket, "']'")
            if len(expr.elements) == 1:
                length = expr.elements[0]
            else:
                length = SubExpression(expr)
            is_array = True
        else:
            self.error(DiagnosticKind.UNEXPECTED_TOKEN,
                       "expected '(' or '[' after Qubit")
            self.recover()
            return None
        self.expect(_K.Semicolon, "';'")
        name = name_token.lexeme
        self.declare(name, "qubit")
        node = QubitAllocation(
            kind_tag=keyword.lexeme,
            name=name,
            qubits=QubitArraySpec(name, length, is_array=is_array),
        )
        return _at(node, keyword)

    def parse_binding(self) -> AstNode | None:
        keyword = self.advance()
        kind = keyword.kind
        if kind in (_K.Let, _K.Mutable):
            name_token = self.expect(_K.Identifier, "binding name")
            if name_token is None or self.expect(_K.Assign, "'='") is None:
                self.recover()
                return None
            expression = self.parse_expression({_K.Semicolon})
            self.expect(_K.Semicolon, "';'")
            self.declare(name_token.lexeme, "variable")
            cls = LetBinding if kind is _K.Let else MutableBinding
            return _at(cls(VariableRef(name_token.lexeme), expression), keyword)
        if kind is _K.Set:
            name_token = self.expect(_K.Identifier, "assignment target")
            if name_token is None or self.expect(_K.Assign, "'='") is None:
                self.recover()
                return None
            expression = self.parse_expression({_K.Semicolon})
            self.expect(_K.Semicolon, "';'")
            return _at(SetAssignment(VariableRef(name_token.lexeme), expression), keyword)
        if kind is _K.Return:
            if self.accept(_K.Semicolon):
                return _at(Return(None), keyword)
            expression = self.parse_expression({_K.Semicolon})
            self.expect(_K.Semicolon, "';'")
            return _at(Return(expression), keyword)
        if kind is _K.Fail:
            expression = self.parse_expression({_K.Semicolon})
            self.expect(_K.Semicolon, "';'")
            if len(expression.elements) == 1 and isinstance(expression.elements[0], StringLiteral):
                return _at(Fail(expression.elements[0]), keyword)
            self.error(DiagnosticKind.UNEXPECTED_TOKEN,
                       "fail requires a string literal message", keyword.span)
            return None
        if kind is _K.If:
            condition = self.parse_expression({_K.LBrace})
            if_clause = self.parse_scope()
            elif_clauses: list[ElifClause] = []
            else_clause: list[AstNode] = []
            while self.peek().kind is _K.Elif:
                self.advance()
                clause_condition = self.parse_expression({_K.LBrace})
                elif_clauses.append(ElifClause(clause_condition, self.parse_scope()))
            if self.accept(_K.Else):
                else_clause = self.parse_scope()
            return _at(If(condition, if_clause, elif_clauses, else_clause), keyword)
        if kind in (_K.Import, _K.Open):
            pieces = []
            while not self.at_end() and self.peek().kind is not _K.Semicolon:
                pieces.append(self.advance().lexeme)
            self.expect(_K.Semicolon, "';'")
            return _at(Import("".join(pieces)), keyword)
        # struct Name { Field : Type, ... }
        name_token = self.expect(_K.Identifier, "struct name")
        if name_token is None:
            self.recover()
            return None
        fields: list[tuple[str, str]] = []
        if self.expect(_K.LBrace, "'{'") is not None:
            while not self.at_end() and self.peek().kind is not _K.RBrace:
                field_token = self.expect(_K.Identifier, "field name")
                if field_token is None:
                    self.recover()
                    break
                self.expect(_K.Colon, "':'")
                field_type = self._parse_type_text({_K.Comma, _K.RBrace})
                fields.append((field_token.lexeme, field_type))
                if not self.accept(_K.Comma):
                    break
            self.expect(_K.RBrace, "'}'")
        self.declare(name_token.lexeme, "struct")
        return _at(Struct(name_token.lexeme, fields), keyword)

    def _parse_namespace(self) -> list[AstNode]:
        """Namespaces are transparent containers: children are spliced into
        the surrounding node list and callables stay visible."""
        self.advance()
        while self.peek().kind in (_K.Identifier, _K.Dot):
            self.advance()
        nodes = self.parse_scope(scope_kind="top")
        for node in nodes:
            if isinstance(node, CallableDecl):
                self.declare(node.name, "callable")
        return nodes

    # -- gate applications ------------------------------------------------------

    def parse_gate_application(self) -> AstNode | None:
        first = self.peek()
        controlled = False
        adjoint = False
        while self.peek().kind in (_K.Controlled, _K.Adjoint):
            token = self.advance()
            if token.kind is _K.Controlled:
                if controlled:
                    self.error(DiagnosticKind.UNEXPECTED_TOKEN,
                               "chained Controlled functors are not supported",
                               token.span)
                    self.recover()
                    return None
                controlled = True
            else:
                adjoint = not adjoint
        name_token = self.expect(_K.Identifier, "gate or callable name")
        if name_token is None:
            self.recover()
            return None
        name = name_token.lexeme
        while self.peek().kind is _K.Dot and self.peek(1).kind is _K.Identifier:
            self.advance()
            name += "." + self.advance().lexeme
        if self.peek().kind is not _K.LParen:
            self.error(DiagnosticKind.UNEXPECTED_TOKEN,
                       f"expected '(' after {name}")
            self.recover()
            return None
        groups, _ = self.parse_parameters()
        self.expect(_K.Semicolon, "';'")

        if controlled:
            node = self._build_controlled(name, groups, name_token)
        elif name == "Measure":
            node = self._build_measure(groups, name_token)
        elif name == "ApplyUnitary":
            node = self._build_unitary(groups, name_token)
        elif name in _GATE_SIGNATURES:
            node = self._build_intrinsic(name, groups, name_token)
        else:
            node = NonIntrinsicCall(name, groups)
        if node is None:
            return None
        node.adjoint = adjoint
        return _at(node, first)

    def _bad_argument(self, message: str, token: Token) -> None:
        self.error(DiagnosticKind.BAD_ARGUMENT, message, token.span)

    @staticmethod
    def _group_param(group: list[Expression]) -> Parameter | None:
        if not group or not group[0].elements:
            return None
        expr = group[0]
        if len(expr.elements) == 1:
            return expr.elements[0]
        return SubExpression(expr)

    @staticmethod
    def _is_qubit_shaped(param: Parameter | None) -> bool:
        return isinstance(param, (IdentifierRef, VariableRef, IndexAccess))

    @staticmethod
    def _as_int_literal(param: Parameter | None) -> IntLiteral | None:
        if isinstance(param, IntLiteral):
            return param
        # A leading minus parses as an operator atom; fold `-n` back into
        # one literal where an integer argument is required.
        if isinstance(param, SubExpression):
            elements = param.inner.elements
            if (len(elements) == 2 and isinstance(elements[0], OperatorAtom)
                    and elements[0].repr == "-"
                    and isinstance(elements[1], IntLiteral)):
                return IntLiteral(-elements[1].val)
        return None

    def _build_intrinsic(self, name: str, groups, token: Token) -> AstNode | None:
        cls, signature = _GATE_SIGNATURES[name]
        if len(groups) != len(signature):
            self._bad_argument(
                f"{name} expects {len(signature)} argument(s), got {len(groups)}",
                token,
            )
            return None
        args = []
        for position, (want, group) in enumerate(zip(signature, groups), start=1):
            param = self._group_param(group)
            if param is None:
                self._bad_argument(f"argument {position} of {name} is empty", token)
                return None
            if want == "q" and not self._is_qubit_shaped(param):
                self._bad_argument(
                    f"argument {position} of {name} must be a qubit", token)
                return None
            if want == "p" and not isinstance(param, PauliLiteral):
                self._bad_argument(
                    f"argument {position} of {name} must be a Pauli literal", token)
                return None
            if want == "i":
                param = self._as_int_literal(param)
                if param is None:
                    self._bad_argument(
                        f"argument {position} of {name} must be an integer literal",
                        token)
                    return None
            args.append(param)
        return cls(*args)

    def _build_controlled(self, name: str, groups, token: Token) -> AstNode | None:
        if name == "X":
            if len(groups) != 2:
                self._bad_argument("Controlled X expects (controls, target)", token)
                return None
            control = self._group_param(groups[0])
            target = self._group_param(groups[1])
            if control is None or target is None:
                self._bad_argument("Controlled X arguments must not be empty", token)
                return None
            return ControlledX(control, target)
        return NonIntrinsicCall(f"Controlled {name}", groups)

    def _build_measure(self, groups, token: Token) -> AstNode | None:
        if len(groups) != 2:
            self._bad_argument("Measure expects (bases, qubits)", token)
            return None
        bases = self._bracket_items(groups[0])
        qubits = self._bracket_items(groups[1])
        if not bases or not isinstance(bases[0], PauliLiteral):
            self._bad_argument("Measure basis must be a Pauli literal", token)
            return None
        if not qubits or not all(self._is_qubit_shaped(q) for q in qubits):
            self._bad_argument("Measure qubits must be qubit references", token)
            return None
        return Measure(bases[0], qubits)

    def _build_unitary(self, groups, token: Token) -> AstNode | None:
        if len(groups) != 2:
            self._bad_argument("ApplyUnitary expects (matrix, qubits)", token)
            return None
        matrix = groups[0][0] if groups[0] else Expression([])
        targets = [q for q in self._bracket_items(groups[1]) if self._is_qubit_shaped(q)]
        return ArbitraryUnitary(matrix, targets)

    @staticmethod
    def _bracket_items(group: list[Expression]) -> list[Parameter]:
        """Unwrap a `[a, b, c]` argument into its item parameters; a bare
        argument yields a single item."""
        if not group or not group[0].elements:
            return []
        elements = group[0].elements
        if not (isinstance(elements[0], OperatorAtom) and elements[0].repr == "["
                and isinstance(elements[-1], OperatorAtom) and elements[-1].repr == "]"):
            return [Parser._group_param(group)]
        items: list[Parameter] = []
        current: list[Parameter] = []
        for element in elements[1:-1]:
            if isinstance(element, OperatorAtom) and element.repr == ",":
                if current:
                    items.append(current[0] if len(current) == 1 else SubExpression(Expression(current)))
                    current = []
                continue
            current.append(element)
        if current:
            items.append(current[0] if len(current) == 1 else SubExpression(Expression(current)))
        return items


def parse_program(tokens: list[Token]) -> tuple[Program, list[Diagnostic]]:
    """Parse a full token sequence (ending in EndOfFile) into a Program.
    Diagnostics are aggregated; parsing resumes after each error."""
    parser = Parser(list(tokens))
    program = Program(parser.parse_nodes())
    return program, parser.diagnostics

"""OpenQASM 3.0 code generation from the parsed AST.

The generator walks the tree recursively, mirroring the parser's descent.
Fully supported scopes (functions, loops, conditionals, conjugations)
become the corresponding QASM constructs; intrinsic gates that QASM lacks
are decomposed (Ising rotations into cx/cy + phase rotations, basis
measurements into h/sdg prefixes). Expression reprs are substituted into
the templates verbatim, after rewriting Q# operator spellings to QASM
(`<<<` to `<<`, `and` to `&&`, ...).
"""

from __future__ import annotations

import math
import re
import textwrap

from .ast_nodes import (
    CCNOT, CNOT, CZ, SWAP,
    AstNode, BigIntLiteral, BoolLiteral, CallableDecl,
    Comment, Conjugation, ControlledX, DoubleLiteral, Expression,
    ForLoop, H, I, If, Import, IntLiteral, LetBinding, M,
    Measure, MutableBinding, NonIntrinsicCall, Parameter, Pauli,
    Program, QubitAllocation, R, R1, R1Frac, RFrac, RangeParam,
    RepeatUntilFixup, Reset, ResetAll, Return, Rx, Rxx, Ry, Ryy, Rz, Rzz,
    S, SetAssignment, T, WhileLoop, X, Y, Z,
)
from .diagnostics import (
    BadArgumentError, Diagnostic, DiagnosticKind, SourceSpan,
    error, warning,
)

_FALLBACK_SPAN = SourceSpan(0, 0, 1, 1)


class IndeterminateTypeError(Exception):
    """No QASM type can be inferred: the value is not literal-determined."""

    def __init__(self, ty: str):
        super().__init__(f"cannot infer a QASM type for {ty!r} without a literal")
        self.ty = ty


def infer_width(ty: str, max_literal=None) -> str:
    """Map a literal-determined source type to QASM type text. Integer
    widths are chosen from the largest absolute literal observed; QASM has
    no BigInt, so oversized values fall back to plain `int`."""
    if ty in ("Int", "BigInt"):
        if max_literal is None:
            raise IndeterminateTypeError(ty)
        magnitude = abs(max_literal)
        if magnitude < 128:
            return "int[8]"
        if magnitude < 32768:
            return "int[16]"
        if magnitude < 2147483648:
            return "int[32]"
        if magnitude < 9223372036854775808:
            return "int[64]"
        return "int"
    if ty == "Double":
        return "float"
    if ty == "Bool":
        return "bool"
    if ty == "Qubit":
        return "qubit"
    raise IndeterminateTypeError(ty)


_SYMBOL_REWRITES = (
    ("<<<", "<<"), (">>>", ">>"),
    ("&&&", "&"), ("|||", "|"), ("^^^", "^"), ("~~~", "~"),
)
_WORD_REWRITES = (("and", "&&"), ("or", "||"), ("not", "!"))


def rewrite_operators(text: str) -> str:
    """Rewrite Q# operator spellings in an expression repr to QASM."""
    for qsharp, qasm in _SYMBOL_REWRITES:
        text = text.replace(qsharp, qasm)
    for word, qasm in _WORD_REWRITES:
        text = re.sub(rf"\b{word}\b", qasm, text)
    return text


def _negated(angle: str) -> str:
    if angle.startswith("-"):
        return angle[1:]
    if re.fullmatch(r"[\w.\[\]]+", angle):
        return "-" + angle
    return f"-({angle})"


def _dyadic_pi(numerator: int, power: int) -> str:
    """Format pi * numerator / 2^(power-1) symbolically, reduced:
    (1, 2) -> "pi/2", (-1, 2) -> "-pi/2", (2, 2) -> "pi", (0, _) -> "0"."""
    if numerator == 0:
        return "0"
    exponent = power - 1
    if exponent >= 0:
        num, den = numerator, 2 ** exponent
    else:
        num, den = numerator * 2 ** (-exponent), 1
    g = math.gcd(abs(num), den)
    num //= g
    den //= g
    sign = "-" if num < 0 else ""
    core = "pi" if abs(num) == 1 else f"{abs(num)}*pi"
    return f"{sign}{core}" if den == 1 else f"{sign}{core}/{den}"


def _indent(text: str) -> str:
    return textwrap.indent(text, "  ")


def _span_of(node: AstNode) -> SourceSpan:
    return node.span or _FALLBACK_SPAN


_SIMPLE_GATES = {X: "x", Y: "y", Z: "z", H: "h", S: "s", T: "t", I: "id"}
_SELF_INVERSE = (X, Y, Z, H, I, CNOT, CZ, CCNOT, SWAP, ControlledX)

_DECLARED_TYPE_TEXT = {
    "Int": "int", "BigInt": "int", "Double": "float", "Bool": "bool",
    "Qubit": "qubit", "Qubit[]": "qubit[]", "Result": "bit",
}


class CodegenContext:
    """Per-compilation state: the ordered qubit registry (a qubit's index
    here is its classical bit index), and the running indent depth."""

    def __init__(self):
        self.qubits: list[str] = []
        self.classical_bits = 0
        self.indent_depth = 0

    def register_allocation(self, name: str, count: int, is_array: bool) -> None:
        if is_array:
            self.qubits.extend(f"{name}[{i}]" for i in range(count))
        else:
            self.qubits.append(name)

    def bit_index(self, qubit_repr: str) -> int:
        return self.qubits.index(qubit_repr)


class Compiler:
    def __init__(self, *, prelude: bool = True, qelib_compat: bool = False):
        self.prelude = prelude
        self.qelib_compat = qelib_compat
        self.diagnostics: list[Diagnostic] = []
        self.ctx = CodegenContext()
        self._callables: dict[str, CallableDecl] = {}
        self._called: set[str] = set()
        self._inlining: set[str] = set()

    # -- entry point ---------------------------------------------------------

    def compile(self, program: Program) -> str:
        self.diagnostics = []
        self.ctx = CodegenContext()
        self._callables = {}
        self._called = set()
        self._inlining = set()
        self._collect(program.nodes)
        body = self.lower_nodes(program.nodes)
        self.ctx.classical_bits = len(self.ctx.qubits)
        if not self.prelude:
            return body
        lines = ["OPENQASM 3.0;", 'include "stdgates.inc";']
        if self.qelib_compat:
            # u1/u2/u3 are qelib1-era names absent from stdgates.inc.
            lines += [
                "gate u1(lam) a { U(0, 0, lam) a; }",
                "gate u2(phi, lam) a { U(pi/2, phi, lam) a; }",
                "gate u3(theta, phi, lam) a { U(theta, phi, lam) a; }",
            ]
        if self.ctx.qubits:
            lines.append(f"bit[{len(self.ctx.qubits)}] c;")
        header = "\n".join(lines) + "\n"
        return header + ("\n" + body if body else "")

    def _collect(self, nodes: list[AstNode]) -> None:
        for node in nodes:
            if isinstance(node, CallableDecl):
                self._callables[node.name] = node
            elif isinstance(node, NonIntrinsicCall):
                self._called.add(node.name)
            for children in self._child_lists(node):
                self._collect(children)

    @staticmethod
    def _child_lists(node: AstNode) -> list[list[AstNode]]:
        if isinstance(node, CallableDecl):
            return [node.nodes]
        if isinstance(node, Conjugation):
            return [node.within, node.applies]
        if isinstance(node, (ForLoop, WhileLoop)):
            return [node.inside]
        if isinstance(node, RepeatUntilFixup):
            return [node.inside, node.fixup]
        if isinstance(node, If):
            return [node.if_clause, *[c.nodes for c in node.elif_clauses],
                    node.else_clause]
        return []

    def _warn(self, kind: DiagnosticKind, message: str, node: AstNode) -> None:
        self.diagnostics.append(warning(kind, message, _span_of(node)))

    # -- node walk -------------------------------------------------------------

    def lower_nodes(self, nodes: list[AstNode]) -> str:
        parts: list[str] = []
        previous_was_comment = False
        for node in nodes:
            text = self.lower_node(node)
            if not text:
                continue
            # Comments open a new paragraph in the output, except at the
            # start of a scope or immediately after another comment.
            if isinstance(node, Comment) and parts and not previous_was_comment:
                parts.append("\n")
            parts.append(text)
            previous_was_comment = isinstance(node, Comment)
        return "".join(parts)

    def lower_node(self, node: AstNode) -> str:
        try:
            text = self._dispatch(node)
        except BadArgumentError as exc:
            self.diagnostics.append(exc.diagnostic)
            return ""
        if text:
            node.qasm_string = text
        return text

    def _dispatch(self, node: AstNode) -> str:
        if isinstance(node, Comment):
            return f"// {node.val}\n"
        if isinstance(node, QubitAllocation):
            return self.lower_allocation(node, self.ctx)
        if isinstance(node, (Rxx, Ryy, Rzz)):
            return self.lower_ising(node, self.ctx)
        if isinstance(node, (Measure, M)):
            return self.lower_measure(node, self.ctx)
        if isinstance(node, (X, Y, Z, H, S, T, I, SWAP, CNOT, CZ, CCNOT,
                             ControlledX, Rx, Ry, Rz, R1, R, RFrac, R1Frac,
                             Reset, ResetAll)):
            return self.lower_simple_gate(node, self.ctx)
        if isinstance(node, (CallableDecl, ForLoop, WhileLoop,
                             RepeatUntilFixup, If, Conjugation)):
            return self.lower_scope(node, self.ctx)
        if isinstance(node, (LetBinding, MutableBinding)):
            return self._lower_binding(node)
        if isinstance(node, SetAssignment):
            return f"{node.variable.name} = {rewrite_operators(node.expression.repr)};\n"
        if isinstance(node, Return):
            if node.expr is None:
                return "return;\n"
            return f"return {rewrite_operators(node.expr.repr)};\n"
        if isinstance(node, NonIntrinsicCall):
            return self._lower_call(node)
        if isinstance(node, Import):
            return ""  # no import system; imports are dropped
        self._warn(
            DiagnosticKind.UNSUPPORTED_CONSTRUCT,
            f"{type(node).__name__} has no QASM lowering",
            node,
        )
        return ""

    # -- allocations -------------------------------------------------------------

    def lower_allocation(self, node: QubitAllocation, ctx: CodegenContext) -> str:
        spec = node.qubits
        length = spec.length
        if not isinstance(length, (IntLiteral, BigIntLiteral)):
            self._warn(
                DiagnosticKind.UNSUPPORTED_CONSTRUCT,
                f"qubit allocation length {length.repr!r} is not a literal",
                node,
            )
            return ""
        count = length.val
        ctx.register_allocation(spec.name, count, spec.is_array)
        # `borrow` lowers like `use`: QASM has no qubit borrowing.
        if spec.is_array:
            return f"qubit[{count}] {spec.name};\n"
        return f"qubit {spec.name};\n"

    # -- gates ---------------------------------------------------------------------

    def lower_ising(self, node: AstNode, ctx: CodegenContext) -> str:
        theta = node.rads.repr
        a = node.qubit0.repr
        b = node.qubit1.repr
        if node.adjoint:
            theta = _negated(theta)
        if isinstance(node, Rxx):
            return (
                f"u3(pi/2, {theta}, 0) {a};\n"
                f"h {b};\n"
                f"cx {a},{b};\n"
                f"u1(-{theta}) {b};\n"
                f"cx {a},{b};\n"
                f"h {b};\n"
                f"u2(-pi, pi-{theta}) {a};\n"
            )
        if isinstance(node, Ryy):
            return (
                f"cy {a},{b};\n"
                f"ry({theta}) {a};\n"
                f"cy {a},{b};\n"
            )
        return (
            f"cx {a},{b};\n"
            f"u1({theta}) {b};\n"
            f"cx {a},{b};\n"
        )

    def lower_measure(self, node: AstNode, ctx: CodegenContext) -> str:
        if isinstance(node, M):
            basis = Pauli.PauliZ
            qubits = [node.qubit]
        else:
            basis = node.basis.val
            qubits = node.qubits
        out = ""
        if basis == Pauli.PauliX:
            for qubit in qubits:
                out += f"h {qubit.repr};\n"  # rotate X into the measured axis
        elif basis == Pauli.PauliY:
            for qubit in qubits:
                out += f"sdg {qubit.repr};\n"
                out += f"h {qubit.repr};\n"
        elif basis != Pauli.PauliZ:
            raise BadArgumentError(error(
                DiagnosticKind.BAD_ARGUMENT,
                "Measure basis must be PauliX, PauliY, or PauliZ",
                _span_of(node),
            ))
        for qubit in qubits:
            try:
                index = ctx.bit_index(qubit.repr)
            except ValueError:
                self._warn(
                    DiagnosticKind.UNSUPPORTED_CONSTRUCT,
                    f"measured qubit {qubit.repr!r} is not a registered qubit",
                    node,
                )
                continue
            out += f"measure {qubit.repr} -> c[{index}];\n"
        return out

    def lower_simple_gate(self, node: AstNode, ctx: CodegenContext) -> str:
        cls = type(node)
        if cls in _SIMPLE_GATES:
            name = _SIMPLE_GATES[cls]
            if node.adjoint and cls is S:
                name = "sdg"
            elif node.adjoint and cls is T:
                name = "tdg"
            return f"{name} {node.target.repr};\n"
        if isinstance(node, (CNOT, ControlledX)):
            return f"cx {node.control.repr},{node.target.repr};\n"
        if isinstance(node, CZ):
            return f"cz {node.control.repr},{node.target.repr};\n"
        if isinstance(node, CCNOT):
            return f"ccx {node.control0.repr},{node.control1.repr},{node.target.repr};\n"
        if isinstance(node, SWAP):
            return f"swap {node.qubit0.repr},{node.qubit1.repr};\n"
        if isinstance(node, (Rx, Ry, Rz, R1)):
            op = {Rx: "rx", Ry: "ry", Rz: "rz", R1: "u1"}[cls]
            theta = _negated(node.rads.repr) if node.adjoint else node.rads.repr
            return f"{op}({theta}) {node.target.repr};\n"
        if isinstance(node, R):
            return self._lower_pauli_rotation(
                node, node.pauli.val,
                _negated(node.rads.repr) if node.adjoint else node.rads.repr,
                node.target,
            )
        if isinstance(node, RFrac):
            # exp(i pi k sigma / 2^n) is the pauli rotation by -pi*k/2^(n-1)
            k = -node.numerator.val if not node.adjoint else node.numerator.val
            angle = _dyadic_pi(k, node.power.val)
            return self._lower_pauli_rotation(node, node.pauli.val, angle, node.target)
        if isinstance(node, R1Frac):
            k = node.numerator.val if not node.adjoint else -node.numerator.val
            return f"u1({_dyadic_pi(k, node.power.val)}) {node.target.repr};\n"
        if isinstance(node, Reset):
            return f"reset {node.target.repr};\n"
        if isinstance(node, ResetAll):
            name = node.register.repr
            members = [q for q in ctx.qubits
                       if q == name or q.startswith(name + "[")]
            if not members:
                self._warn(
                    DiagnosticKind.UNSUPPORTED_CONSTRUCT,
                    f"ResetAll target {name!r} is not a registered qubit register",
                    node,
                )
                return ""
            return "".join(f"reset {q};\n" for q in members)
        raise AssertionError(f"not a simple gate: {type(node).__name__}")

    def _lower_pauli_rotation(self, node: AstNode, pauli: Pauli, angle: str,
                              target: Parameter) -> str:
        ops = {Pauli.PauliX: "rx", Pauli.PauliY: "ry", Pauli.PauliZ: "rz"}
        if pauli not in ops:
            raise BadArgumentError(error(
                DiagnosticKind.BAD_ARGUMENT,
                "rotation axis must be PauliX, PauliY, or PauliZ",
                _span_of(node),
            ))
        return f"{ops[pauli]}({angle}) {target.repr};\n"

    # -- bindings and calls ------------------------------------------------------

    def _lower_binding(self, node: LetBinding | MutableBinding) -> str:
        name = node.variable.name
        rhs = rewrite_operators(node.expression.repr)
        elements = node.expression.elements
        if len(elements) == 1:
            literal = elements[0]
            ty = None
            if isinstance(literal, IntLiteral):
                ty = infer_width("Int", literal.val)
            elif isinstance(literal, BigIntLiteral):
                ty = infer_width("BigInt", literal.val)
            elif isinstance(literal, DoubleLiteral):
                ty = infer_width("Double")
            elif isinstance(literal, BoolLiteral):
                ty = infer_width("Bool")
            if ty:
                return f"{ty} {name} = {rhs};\n"
        # Not literal-determined; emit the bare assignment.
        return f"{name} = {rhs};\n"

    def _lower_call(self, node: NonIntrinsicCall) -> str:
        target = self._callables.get(node.name)
        if (target is not None and target.kind_tag == "operation"
                and not target.param_types
                and not any(group and group[0].elements for group in node.params)):
            if node.name in self._inlining:
                self._warn(
                    DiagnosticKind.UNSUPPORTED_CONSTRUCT,
                    f"recursive call to {node.name} cannot be inlined",
                    node,
                )
                return ""
            self._inlining.add(node.name)
            try:
                return self.lower_nodes(target.nodes)
            finally:
                self._inlining.discard(node.name)
        self._warn(
            DiagnosticKind.UNSUPPORTED_CONSTRUCT,
            f"call to {node.name!r} cannot be lowered"
            + ("" if target is None else " (only argument-free operations inline)"),
            node,
        )
        return ""

    # -- scopes -------------------------------------------------------------------

    def lower_scope(self, node: AstNode, ctx: CodegenContext) -> str:
        if isinstance(node, CallableDecl):
            return self._lower_callable(node)
        if isinstance(node, ForLoop):
            return self._lower_for(node)
        if isinstance(node, WhileLoop):
            condition = rewrite_operators(node.condition.repr)
            return f"while ({condition}) {{\n{self._block(node.inside)}}}\n"
        if isinstance(node, RepeatUntilFixup):
            condition = rewrite_operators(node.condition.repr)
            body = self.lower_nodes(node.inside) + self.lower_nodes(node.fixup)
            return f"while (!({condition})) {{\n{_indent(body)}}}\n"
        if isinstance(node, If):
            return self._lower_if(node)
        if isinstance(node, Conjugation):
            return self._lower_conjugation(node)
        raise AssertionError(f"not a scope node: {type(node).__name__}")

    def _block(self, nodes: list[AstNode]) -> str:
        self.ctx.indent_depth += 1
        try:
            return _indent(self.lower_nodes(nodes))
        finally:
            self.ctx.indent_depth -= 1

    def _lower_callable(self, node: CallableDecl) -> str:
        if node.kind_tag == "operation":
            # Operations have no QASM subroutine equivalent (functors,
            # qubit arguments); entry-style ones are inlined in program
            # order, called ones at their call sites.
            if node.name in self._called:
                return ""
            return self.lower_nodes(node.nodes)
        args = []
        for param_name, declared in node.param_types:
            text = self._declared_type_text(declared, node)
            args.append(f"{text} {param_name}" if text else param_name)
        head = f"def {node.name}({', '.join(args)})"
        if node.return_type is not None:
            returns = self._declared_type_text(node.return_type.name, node)
            if returns:
                head += f" -> {returns}"
        return f"{head} {{\n{self._block(node.nodes)}}}\n"

    def _declared_type_text(self, declared: str, node: AstNode) -> str | None:
        try:
            return infer_width(declared)
        except IndeterminateTypeError:
            text = _DECLARED_TYPE_TEXT.get(declared)
            if declared in ("Int", "BigInt"):
                self._warn(
                    DiagnosticKind.INDETERMINATE_TYPE,
                    f"no literal to size {declared} parameter; using plain int",
                    node,
                )
            elif text is None:
                self._warn(
                    DiagnosticKind.INDETERMINATE_TYPE,
                    f"no QASM type for declared type {declared!r}",
                    node,
                )
            return text

    def _lower_for(self, node: ForLoop) -> str:
        elements = node.vals.elements
        if len(elements) != 1 or not isinstance(elements[0], RangeParam):
            self._warn(
                DiagnosticKind.UNSUPPORTED_CONSTRUCT,
                f"for-loop iterable {node.vals.repr!r} is not a lowerable range",
                node,
            )
            return ""
        rng = elements[0]
        if rng.lower is None or rng.upper is None:
            self._warn(
                DiagnosticKind.UNSUPPORTED_CONSTRUCT,
                f"open-ended range {rng.repr!r} cannot be lowered",
                node,
            )
            return ""
        bounds = [rng.lower, rng.upper] + ([rng.step] if rng.step else [])
        literals = [self._int_literal_value(b) for b in bounds]
        if all(v is not None for v in literals):
            loop_type = infer_width("Int", max(abs(v) for v in literals)) + " "
        else:
            self._warn(
                DiagnosticKind.INDETERMINATE_TYPE,
                f"range bounds of {rng.repr!r} are not literals; "
                "loop variable is left untyped",
                node,
            )
            loop_type = ""
        pieces = [rewrite_operators(rng.lower.repr)]
        if rng.step is not None:
            pieces.append(rewrite_operators(rng.step.repr))
        pieces.append(rewrite_operators(rng.upper.repr))
        iterable = ":".join(pieces)
        head = f"for {loop_type}{node.variable.name} in [{iterable}]"
        return f"{head} {{\n{self._block(node.inside)}}}\n"

    @staticmethod
    def _int_literal_value(expr: Expression | None) -> int | None:
        if expr is not None and len(expr.elements) == 1:
            element = expr.elements[0]
            if isinstance(element, (IntLiteral, BigIntLiteral)):
                return element.val
        return None

    def _lower_if(self, node: If) -> str:
        condition = rewrite_operators(node.condition.repr)
        text = f"if ({condition}) {{\n{self._block(node.if_clause)}}}"
        for clause in node.elif_clauses:
            clause_condition = rewrite_operators(clause.condition.repr)
            text += f" else if ({clause_condition}) {{\n{self._block(clause.nodes)}}}"
        if node.else_clause:
            text += f" else {{\n{self._block(node.else_clause)}}}"
        return text + "\n"

    def _lower_conjugation(self, node: Conjugation) -> str:
        # V-dagger U V: the within block, the apply block, then the within
        # block reversed with each gate inverted.
        return (
            self.lower_nodes(node.within)
            + self.lower_nodes(node.applies)
            + self._inverse_block(node.within)
        )

    def _inverse_block(self, nodes: list[AstNode]) -> str:
        return "".join(self._lower_inverse(n) for n in reversed(nodes))

    def _lower_inverse(self, node: AstNode) -> str:
        if isinstance(node, Comment):
            return ""
        try:
            if isinstance(node, _SELF_INVERSE):
                return self.lower_simple_gate(node, self.ctx)
            if isinstance(node, S):
                return f"{'s' if node.adjoint else 'sdg'} {node.target.repr};\n"
            if isinstance(node, T):
                return f"{'t' if node.adjoint else 'tdg'} {node.target.repr};\n"
            if isinstance(node, (Rx, Ry, Rz, R1)):
                op = {Rx: "rx", Ry: "ry", Rz: "rz", R1: "u1"}[type(node)]
                theta = node.rads.repr if node.adjoint else _negated(node.rads.repr)
                return f"{op}({theta}) {node.target.repr};\n"
            if isinstance(node, R):
                theta = node.rads.repr if node.adjoint else _negated(node.rads.repr)
                return self._lower_pauli_rotation(node, node.pauli.val, theta, node.target)
            if isinstance(node, (Rxx, Ryy, Rzz)):
                theta = node.rads.repr if node.adjoint else _negated(node.rads.repr)
                a, b = node.qubit0.repr, node.qubit1.repr
                if isinstance(node, Rxx):
                    return (
                        f"u3(pi/2, {theta}, 0) {a};\nh {b};\ncx {a},{b};\n"
                        f"u1(-{theta}) {b};\ncx {a},{b};\nh {b};\n"
                        f"u2(-pi, pi-{theta}) {a};\n"
                    )
                if isinstance(node, Ryy):
                    return f"cy {a},{b};\nry({theta}) {a};\ncy {a},{b};\n"
                return f"cx {a},{b};\nu1({theta}) {b};\ncx {a},{b};\n"
            if isinstance(node, RFrac):
                flipped = RFrac(node.pauli, node.numerator, node.power, node.target)
                flipped.adjoint = not node.adjoint
                return self.lower_simple_gate(flipped, self.ctx)
            if isinstance(node, R1Frac):
                flipped = R1Frac(node.numerator, node.power, node.target)
                flipped.adjoint = not node.adjoint
                return self.lower_simple_gate(flipped, self.ctx)
            if isinstance(node, Conjugation):
                # (V-dagger U V) inverse = V-dagger U-inverse V
                return (
                    self.lower_nodes(node.within)
                    + self._inverse_block(node.applies)
                    + self._inverse_block(node.within)
                )
        except BadArgumentError as exc:
            self.diagnostics.append(exc.diagnostic)
            return ""
        self._warn(
            DiagnosticKind.UNSUPPORTED_CONSTRUCT,
            f"cannot invert {type(node).__name__} inside a conjugation",
            node,
        )
        return ""


def compile_program(program: Program, *, prelude: bool = True,
                    qelib_compat: bool = False) -> tuple[str, list[Diagnostic]]:
    """Lower a parsed Program to OpenQASM 3.0 text. Returns the text and
    the diagnostics raised during lowering."""
    compiler = Compiler(prelude=prelude, qelib_compat=qelib_compat)
    return compiler.compile(program), compiler.diagnostics

"""AST node hierarchy produced by the parser and consumed by the code
generator.

Expressions are flat element sequences, not precedence trees. Every
expression and parameter stores a textual `repr` built once at
construction by concatenating the reprs of its parts; the code generator
substitutes these strings directly into output templates.

`serialize()` returns plain dicts/lists whose keys and ordering follow the
established dump format (no type tags); `serialize_ast` renders them as
two-space-indented JSON.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum


class Pauli(str, Enum):
    PauliI = "PauliI"
    PauliX = "PauliX"
    PauliY = "PauliY"
    PauliZ = "PauliZ"


def _canonical_number(value) -> str:
    """Shortest decimal spelling of a numeric literal ("1." parses to 1.0
    and prints as "1"; "0.25" stays "0.25")."""
    if isinstance(value, float):
        text = repr(value)
        return text[:-2] if text.endswith(".0") else text
    return str(value)


# ---------------------------------------------------------------------------
# Parameters and expressions
# ---------------------------------------------------------------------------

class Parameter:
    """Base for expression atoms; every variant carries a `repr` string."""

    repr: str

    def serialize(self) -> dict:
        raise NotImplementedError


@dataclass
class Expression:
    """Flat sequence of Parameter atoms. repr is the concatenation of the
    element reprs with no inserted separators."""

    elements: list[Parameter]
    repr: str = None

    def __post_init__(self):
        if self.repr is None:
            self.repr = "".join(el.repr for el in self.elements)

    def serialize(self) -> dict:
        return {"repr": self.repr, "elements": [el.serialize() for el in self.elements]}


def _serialize_operand(value) -> dict:
    """Serialize a sub-expression position (range endpoint, index). Absent
    values print as {}; single-atom expressions print the atom itself."""
    if value is None:
        return {}
    if isinstance(value, Expression):
        if len(value.elements) == 1:
            return value.elements[0].serialize()
        return value.serialize()
    return value.serialize()


@dataclass
class IdentifierRef(Parameter):
    id: str
    repr: str = None

    def __post_init__(self):
        if self.repr is None:
            self.repr = self.id

    def serialize(self) -> dict:
        return {"repr": self.repr, "id": self.id}


@dataclass
class VariableRef(Parameter):
    name: str
    repr: str = None

    def __post_init__(self):
        if self.repr is None:
            self.repr = self.name

    def serialize(self) -> dict:
        return {"repr": self.repr, "name": self.name}


@dataclass
class IntLiteral(Parameter):
    val: int
    repr: str = None

    def __post_init__(self):
        if self.repr is None:
            self.repr = _canonical_number(self.val)

    def serialize(self) -> dict:
        return {"repr": self.repr, "val": self.val}


@dataclass
class BigIntLiteral(Parameter):
    val: int
    repr: str = None

    def __post_init__(self):
        if self.repr is None:
            self.repr = _canonical_number(self.val)

    def serialize(self) -> dict:
        return {"repr": self.repr, "val": self.val}


@dataclass
class DoubleLiteral(Parameter):
    val: float
    repr: str = None

    def __post_init__(self):
        if self.repr is None:
            self.repr = _canonical_number(self.val)

    def serialize(self) -> dict:
        return {"repr": self.repr, "val": self.val}


@dataclass
class StringLiteral(Parameter):
    """val keeps the quoted lexeme, quote characters included."""

    val: str
    repr: str = None

    def __post_init__(self):
        if self.repr is None:
            self.repr = self.val

    def serialize(self) -> dict:
        return {"repr": self.repr, "val": self.val}


@dataclass
class BoolLiteral(Parameter):
    val: bool
    repr: str = None

    def __post_init__(self):
        if self.repr is None:
            self.repr = "true" if self.val else "false"

    def serialize(self) -> dict:
        return {"repr": self.repr, "val": self.val}


@dataclass
class PauliLiteral(Parameter):
    val: Pauli
    repr: str = None

    def __post_init__(self):
        if self.repr is None:
            self.repr = self.val.value

    def serialize(self) -> dict:
        return {"repr": self.repr, "val": self.val.value}


@dataclass
class ResultLiteral(Parameter):
    val: str  # "Zero" | "One"
    repr: str = None

    def __post_init__(self):
        if self.repr is None:
            self.repr = self.val

    def serialize(self) -> dict:
        return {"repr": self.repr, "val": self.val}


@dataclass
class OperatorAtom(Parameter):
    symbol: str
    repr: str = None

    def __post_init__(self):
        if self.repr is None:
            self.repr = self.symbol

    def serialize(self) -> dict:
        return {"repr": self.repr}


@dataclass
class FunctionCall(Parameter):
    """Call atom. Each argument is its own singleton expression group; the
    repr appends ", " after every argument, `f(a, b, )`, and `f()` when
    there are none."""

    name: str
    params: list[list[Expression]]
    repr: str = None

    def __post_init__(self):
        if self.repr is None:
            inner = "".join(
                expr.repr + ", " for group in self.params for expr in group
            )
            self.repr = f"{self.name}({inner})"

    def serialize(self) -> dict:
        return {
            "repr": self.repr,
            "name": self.name,
            "params": [[expr.serialize() for expr in group] for group in self.params],
        }


@dataclass
class RangeParam(Parameter):
    """Range such as `0..3`, `0..2..10`, or the open `...2...`. The repr is
    built from the source pieces; open endpoints serialize as {}."""

    lower: Expression | None
    upper: Expression | None
    step: Expression | None = None
    repr: str = None

    def serialize(self) -> dict:
        return {
            "repr": self.repr,
            "lower": _serialize_operand(self.lower),
            "upper": _serialize_operand(self.upper),
        }


@dataclass
class IndexAccess(Parameter):
    instance: str
    index: Expression | RangeParam
    repr: str = None

    def __post_init__(self):
        if self.repr is None:
            self.repr = f"{self.instance}[{self.index.repr}]"

    def serialize(self) -> dict:
        return {
            "repr": self.repr,
            "instance": self.instance,
            "index": _serialize_operand(self.index),
        }


@dataclass
class SubExpression(Parameter):
    """A whole expression standing where a single parameter is expected
    (e.g. a computed rotation angle). Identity composition: its repr is the
    wrapped expression's repr."""

    inner: Expression
    repr: str = None

    def __post_init__(self):
        if self.repr is None:
            self.repr = self.inner.repr

    def serialize(self) -> dict:
        return self.inner.serialize()


def repr_of(node) -> str:
    """The stored textual representation of an expression or parameter."""
    return node.repr


# ---------------------------------------------------------------------------
# Statement / declaration nodes
# ---------------------------------------------------------------------------

class AstNode:
    """Base for all statement-level nodes. `span` points at the node's
    first token; `qasm_string` is written once by the code generator;
    `adjoint` marks gates modified by the Adjoint functor."""

    span = None
    qasm_string = None
    adjoint = False

    def serialize(self):
        raise NotImplementedError


@dataclass
class Program(AstNode):
    nodes: list[AstNode]

    def serialize(self) -> list:
        return [n.serialize() for n in self.nodes]


@dataclass
class Comment(AstNode):
    val: str

    def serialize(self) -> dict:
        return {"val": self.val}


@dataclass
class TypeRef:
    name: str

    def serialize(self) -> dict:
        return {"repr": self.name}


@dataclass
class CallableDecl(AstNode):
    kind_tag: str  # "function" | "operation"
    name: str
    params: list[list[Expression]]
    nodes: list[AstNode]
    modifiers: list[str] = field(default_factory=list)
    return_type: TypeRef | None = None  # None encodes Unit
    # declared (name, Q# type) pairs, kept for code generation
    param_types: list[tuple[str, str]] = field(default_factory=list)

    def serialize(self) -> dict:
        return {
            "name": self.name,
            "nodes": [n.serialize() for n in self.nodes],
            "params": [[expr.serialize() for expr in group] for group in self.params],
            "modifiers": list(self.modifiers),
            "returnType": self.return_type.serialize() if self.return_type else {},
        }


@dataclass
class QubitArraySpec:
    name: str
    length: Parameter
    # Qubit[n] allocations index their qubits; Qubit() binds a bare name.
    is_array: bool = False

    def serialize(self) -> dict:
        return {
            "repr": self.name,
            "name": self.name,
            "length": self.length.serialize(),
        }


@dataclass
class QubitAllocation(AstNode):
    kind_tag: str  # "use" | "borrow"
    name: str
    qubits: QubitArraySpec

    def serialize(self) -> dict:
        return {
            "name": {"repr": self.name, "val": self.name},
            "qubits": self.qubits.serialize(),
        }


@dataclass
class Conjugation(AstNode):
    within: list[AstNode]
    applies: list[AstNode]

    def serialize(self) -> dict:
        return {
            "within": [n.serialize() for n in self.within],
            "applies": [n.serialize() for n in self.applies],
        }


@dataclass
class ForLoop(AstNode):
    variable: VariableRef
    vals: Expression
    inside: list[AstNode]

    def serialize(self) -> dict:
        return {
            "variable": self.variable.serialize(),
            "inside": [n.serialize() for n in self.inside],
            "vals": {
                "repr": self.vals.repr,
                "vals": [el.serialize() for el in self.vals.elements],
                "size": len(self.vals.elements),
            },
        }


@dataclass
class WhileLoop(AstNode):
    condition: Expression
    inside: list[AstNode]

    def serialize(self) -> dict:
        return {
            "condition": self.condition.serialize(),
            "inside": [n.serialize() for n in self.inside],
        }


@dataclass
class RepeatUntilFixup(AstNode):
    inside: list[AstNode]
    condition: Expression
    fixup: list[AstNode] = field(default_factory=list)

    def serialize(self) -> dict:
        return {
            "inside": [n.serialize() for n in self.inside],
            "condition": self.condition.serialize(),
            "fixup": [n.serialize() for n in self.fixup],
        }


@dataclass
class ElifClause:
    condition: Expression
    nodes: list[AstNode]

    def serialize(self) -> dict:
        return {
            "condition": self.condition.serialize(),
            "ifClause": [n.serialize() for n in self.nodes],
        }


@dataclass
class If(AstNode):
    condition: Expression
    if_clause: list[AstNode]
    elif_clauses: list[ElifClause] = field(default_factory=list)
    else_clause: list[AstNode] = field(default_factory=list)

    def serialize(self) -> dict:
        out = {
            "condition": self.condition.serialize(),
            "ifClause": [n.serialize() for n in self.if_clause],
        }
        # Optional clauses appear only when present, matching the dump
        # shape of a plain if.
        if self.elif_clauses:
            out["elifClauses"] = [c.serialize() for c in self.elif_clauses]
        if self.else_clause:
            out["elseClause"] = [n.serialize() for n in self.else_clause]
        return out


@dataclass
class LetBinding(AstNode):
    variable: VariableRef
    expression: Expression

    def serialize(self) -> dict:
        return {
            "expression": self.expression.serialize(),
            "variable": self.variable.serialize(),
        }


@dataclass
class MutableBinding(AstNode):
    variable: VariableRef
    expression: Expression

    def serialize(self) -> dict:
        return {
            "expression": self.expression.serialize(),
            "variable": self.variable.serialize(),
        }


@dataclass
class SetAssignment(AstNode):
    variable: VariableRef
    expression: Expression

    def serialize(self) -> dict:
        return {
            "expression": self.expression.serialize(),
            "variable": self.variable.serialize(),
        }


@dataclass
class Return(AstNode):
    expr: Expression | None

    def serialize(self) -> dict:
        return {"expr": self.expr.serialize() if self.expr else {}}


@dataclass
class Fail(AstNode):
    msg: StringLiteral

    def serialize(self) -> dict:
        return {"msg": self.msg.serialize()}


@dataclass
class Import(AstNode):
    path: str

    def serialize(self) -> dict:
        return {"path": self.path}


@dataclass
class Struct(AstNode):
    name: str
    fields: list[tuple[str, str]]  # (field name, declared type)

    def serialize(self) -> dict:
        return {
            "name": self.name,
            "fields": [{"name": n, "type": t} for n, t in self.fields],
        }


@dataclass
class ArrayLiteral(AstNode):
    items: list[Expression]

    def serialize(self) -> dict:
        return {"items": [e.serialize() for e in self.items]}


# ---------------------------------------------------------------------------
# Gate nodes (named after the intrinsics they represent)
# ---------------------------------------------------------------------------

@dataclass
class _SingleQubitGate(AstNode):
    target: Parameter

    def serialize(self) -> dict:
        return {"target": self.target.serialize()}


class X(_SingleQubitGate): pass
class Y(_SingleQubitGate): pass
class Z(_SingleQubitGate): pass
class H(_SingleQubitGate): pass
class S(_SingleQubitGate): pass
class T(_SingleQubitGate): pass
class I(_SingleQubitGate): pass
class Reset(_SingleQubitGate): pass


@dataclass
class ResetAll(AstNode):
    register: Parameter

    def serialize(self) -> dict:
        return {"register": self.register.serialize()}


@dataclass
class _ControlledGate(AstNode):
    control: Parameter
    target: Parameter

    def serialize(self) -> dict:
        return {"control": self.control.serialize(), "target": self.target.serialize()}


class CNOT(_ControlledGate): pass
class CZ(_ControlledGate): pass
class ControlledX(_ControlledGate): pass


@dataclass
class CCNOT(AstNode):
    control0: Parameter
    control1: Parameter
    target: Parameter

    def serialize(self) -> dict:
        return {
            "control0": self.control0.serialize(),
            "control1": self.control1.serialize(),
            "target": self.target.serialize(),
        }


@dataclass
class SWAP(AstNode):
    qubit0: Parameter
    qubit1: Parameter

    def serialize(self) -> dict:
        return {"qubit0": self.qubit0.serialize(), "qubit1": self.qubit1.serialize()}


@dataclass
class _RotationGate(AstNode):
    rads: Parameter
    target: Parameter

    def serialize(self) -> dict:
        return {"rads": self.rads.serialize(), "target": self.target.serialize()}


class Rx(_RotationGate): pass
class Ry(_RotationGate): pass
class Rz(_RotationGate): pass
class R1(_RotationGate): pass


@dataclass
class R(AstNode):
    pauli: PauliLiteral
    rads: Parameter
    target: Parameter

    def serialize(self) -> dict:
        return {
            "pauli": self.pauli.serialize(),
            "rads": self.rads.serialize(),
            "target": self.target.serialize(),
        }


@dataclass
class RFrac(AstNode):
    pauli: PauliLiteral
    numerator: IntLiteral
    power: IntLiteral
    target: Parameter

    def serialize(self) -> dict:
        return {
            "pauli": self.pauli.serialize(),
            "numerator": self.numerator.serialize(),
            "power": self.power.serialize(),
            "target": self.target.serialize(),
        }


@dataclass
class R1Frac(AstNode):
    numerator: IntLiteral
    power: IntLiteral
    target: Parameter

    def serialize(self) -> dict:
        return {
            "numerator": self.numerator.serialize(),
            "power": self.power.serialize(),
            "target": self.target.serialize(),
        }


@dataclass
class _IsingGate(AstNode):
    rads: Parameter
    qubit0: Parameter
    qubit1: Parameter

    def serialize(self) -> dict:
        return {
            "rads": self.rads.serialize(),
            "qubit0": self.qubit0.serialize(),
            "qubit1": self.qubit1.serialize(),
        }


class Rxx(_IsingGate): pass
class Ryy(_IsingGate): pass
class Rzz(_IsingGate): pass


@dataclass
class Measure(AstNode):
    basis: PauliLiteral
    qubits: list[Parameter]

    def serialize(self) -> dict:
        return {
            "basis": self.basis.serialize(),
            "qubits": [q.serialize() for q in self.qubits],
        }


@dataclass
class M(AstNode):
    qubit: Parameter

    def serialize(self) -> dict:
        return {"qubit": self.qubit.serialize()}


@dataclass
class ArbitraryUnitary(AstNode):
    matrix: Expression
    targets: list[Parameter]

    def serialize(self) -> dict:
        return {
            "matrix": self.matrix.serialize(),
            "targets": [t.serialize() for t in self.targets],
        }


@dataclass
class NonIntrinsicCall(AstNode):
    name: str
    params: list[list[Expression]]

    def serialize(self) -> dict:
        return {
            "name": self.name,
            "params": [[expr.serialize() for expr in group] for group in self.params],
        }


def serialize_ast(root, indent: int = 2) -> str:
    """JSON dump of a node (or whole Program). No type tags are emitted
    and key order follows each node kind's construction order."""
    return json.dumps(root.serialize(), indent=indent)

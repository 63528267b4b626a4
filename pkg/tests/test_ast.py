"""AST value tests: repr composition rules and serialized shapes."""

import json

from qs2qasm.ast_nodes import (
    BoolLiteral,
    CallableDecl,
    Comment,
    DoubleLiteral,
    Expression,
    Fail,
    ForLoop,
    FunctionCall,
    H,
    IdentifierRef,
    IndexAccess,
    IntLiteral,
    LetBinding,
    OperatorAtom,
    Pauli,
    PauliLiteral,
    Program,
    RangeParam,
    Return,
    StringLiteral,
    SubExpression,
    VariableRef,
    repr_of,
    serialize_ast,
)


class TestReprs:
    def test_expression_repr_concatenates_without_separators(self):
        expr = Expression([IdentifierRef("nQubits"), OperatorAtom(">"), IntLiteral(63)])
        assert expr.repr == "nQubits>63"

    def test_shift_expression(self):
        expr = Expression([IntLiteral(1), OperatorAtom("<<<"), IdentifierRef("nQubits")])
        assert repr_of(expr) == "1<<<nQubits"

    def test_single_atom_expression(self):
        assert Expression([VariableRef("x")]).repr == "x"

    def test_function_call_appends_comma_space_per_argument(self):
        call = FunctionCall("IntAsDouble", [[Expression([VariableRef("nItems")])]])
        assert call.repr == "IntAsDouble(nItems, )"

    def test_zero_argument_call(self):
        assert FunctionCall("PI", []).repr == "PI()"

    def test_two_argument_call(self):
        call = FunctionCall("Max", [
            [Expression([IdentifierRef("a")])],
            [Expression([IdentifierRef("b")])],
        ])
        assert call.repr == "Max(a, b, )"

    def test_nested_calls_compose(self):
        inner = FunctionCall("IntAsDouble", [[Expression([VariableRef("nItems")])]])
        sqrt = FunctionCall("Sqrt", [[Expression([inner])]])
        outer = FunctionCall("ArcSin", [[Expression([
            DoubleLiteral(1.0), OperatorAtom("/"), sqrt])]])
        assert outer.repr == "ArcSin(1/Sqrt(IntAsDouble(nItems, ), ), )"

    def test_index_access_repr(self):
        access = IndexAccess("register", Expression([IntLiteral(0)]))
        assert access.repr == "register[0]"

    def test_open_range_repr_and_serialization(self):
        rng = RangeParam(lower=None, upper=None,
                         step=Expression([IntLiteral(2)]), repr="...2...")
        assert rng.repr == "...2..."
        assert rng.serialize() == {"repr": "...2...", "lower": {}, "upper": {}}

    def test_closed_range_serialization(self):
        rng = RangeParam(lower=Expression([IntLiteral(0)]),
                         upper=Expression([IntLiteral(3)]), repr="0..3")
        assert rng.serialize() == {
            "repr": "0..3",
            "lower": {"repr": "0", "val": 0},
            "upper": {"repr": "3", "val": 3},
        }

    def test_subexpression_is_identity_composition(self):
        assert repr_of(SubExpression(Expression([IdentifierRef("x")]))) == "x"

    def test_double_literal_repr_is_shortest_decimal(self):
        assert DoubleLiteral(1.0).repr == "1"
        assert DoubleLiteral(0.25).repr == "0.25"
        assert DoubleLiteral(8.5).repr == "8.5"

    def test_bool_and_pauli_reprs(self):
        assert BoolLiteral(False).repr == "false"
        assert PauliLiteral(Pauli.PauliX).repr == "PauliX"

    def test_string_repr_keeps_quotes(self):
        lit = StringLiteral('"This sample supports at most 63 qubits."')
        assert lit.repr == '"This sample supports at most 63 qubits."'
        assert lit.serialize()["val"] == '"This sample supports at most 63 qubits."'

    def test_repr_is_stored_not_recomputed(self):
        expr = Expression([IdentifierRef("a")])
        expr.elements.append(IdentifierRef("b"))  # mutation after the fact
        assert expr.repr == "a"


class TestSerialization:
    def test_hadamard_target_shape(self):
        node = H(IdentifierRef("outputQubit"))
        assert node.serialize() == {
            "target": {"repr": "outputQubit", "id": "outputQubit"}}

    def test_empty_callable_keeps_all_fields(self):
        decl = CallableDecl(kind_tag="operation", name="F", params=[], nodes=[])
        assert decl.serialize() == {
            "name": "F",
            "nodes": [],
            "params": [],
            "modifiers": [],
            "returnType": {},
        }

    def test_no_type_tags_anywhere(self):
        decl = CallableDecl(
            kind_tag="operation", name="F", params=[],
            nodes=[H(IdentifierRef("q")), Comment(" note")],
        )
        dumped = serialize_ast(decl)
        for forbidden in ("kind", "type", "CallableDecl", "Comment", '"H"'):
            assert forbidden not in dumped

    def test_let_binding_key_order(self):
        node = LetBinding(
            VariableRef("nItems"),
            Expression([IntLiteral(1), OperatorAtom("<<<"), IdentifierRef("nQubits")]),
        )
        assert list(node.serialize().keys()) == ["expression", "variable"]

    def test_return_wraps_expression(self):
        node = Return(Expression([VariableRef("iterations")]))
        assert node.serialize() == {
            "expr": {
                "repr": "iterations",
                "elements": [{"repr": "iterations", "name": "iterations"}],
            }
        }

    def test_fail_message_is_plain_quoted_string(self):
        node = Fail(StringLiteral('"nope"'))
        assert node.serialize() == {
            "msg": {"repr": '"nope"', "val": '"nope"'}}

    def test_for_loop_vals_wrapper_has_size(self):
        loop = ForLoop(
            VariableRef("q"),
            Expression([IndexAccess("inputQubits",
                                    RangeParam(None, None, Expression([IntLiteral(2)]),
                                               repr="...2..."))]),
            inside=[],
        )
        dumped = loop.serialize()
        assert list(dumped.keys()) == ["variable", "inside", "vals"]
        assert dumped["vals"]["size"] == 1
        assert dumped["vals"]["repr"] == "inputQubits[...2...]"

    def test_program_serializes_as_node_list(self):
        program = Program([Comment(" a"), Comment(" b")])
        assert json.loads(serialize_ast(program)) == [{"val": " a"}, {"val": " b"}]

    def test_serialize_ast_uses_two_space_indent(self):
        text = serialize_ast(H(IdentifierRef("q")))
        assert '\n  "target"' in text

    def test_serialization_is_stable(self):
        node = CallableDecl(
            kind_tag="function", name="G",
            params=[[Expression([IdentifierRef("n")])]],
            nodes=[Return(Expression([IdentifierRef("n")]))],
        )
        assert serialize_ast(node) == serialize_ast(node)

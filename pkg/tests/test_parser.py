"""Parser tests: construct-by-construct behavior, scope handling, golden
trees, error recovery, and structural properties."""

import json
import random

import pytest

from conftest import read_data, walk_expressions
from qs2qasm import parse_source, serialize_ast
from qs2qasm.ast_nodes import (
    CallableDecl,
    Comment,
    Conjugation,
    ControlledX,
    Fail,
    ForLoop,
    H,
    If,
    Import,
    IndexAccess,
    LetBinding,
    Measure,
    MutableBinding,
    NonIntrinsicCall,
    Pauli,
    QubitAllocation,
    RangeParam,
    RepeatUntilFixup,
    Return,
    Rxx,
    SetAssignment,
    Struct,
    WhileLoop,
    X,
)
from qs2qasm.diagnostics import DiagnosticKind
from qs2qasm.lexer import tokenize
from qs2qasm.parser import parse_program


def parse_clean(source):
    program, diagnostics = parse_source(source)
    assert diagnostics == [], diagnostics
    return program


class TestProgram:
    def test_empty_source(self):
        assert parse_clean("").nodes == []

    def test_single_allocation(self):
        program = parse_clean("use q = Qubit();")
        node = program.nodes[0]
        assert isinstance(node, QubitAllocation)
        assert node.qubits.length.serialize() == {"repr": "1", "val": 1}

    def test_nodes_preserve_source_order(self):
        program = parse_clean("// first\nX(q);\n// last\n")
        assert [type(n) for n in program.nodes] == [Comment, X, Comment]


class TestStatementDispatch:
    def test_single_qubit_gate(self):
        node = parse_clean("X(q);").nodes[0]
        assert isinstance(node, X)
        assert node.target.repr == "q"

    def test_comment_keeps_leading_space(self):
        node = parse_clean("// note").nodes[0]
        assert node.val == " note"

    def test_controlled_x(self):
        node = parse_clean("Controlled X(inputQubits, outputQubit);").nodes[0]
        assert isinstance(node, ControlledX)
        assert node.control.repr == "inputQubits"
        assert node.target.repr == "outputQubit"

    def test_unknown_callable_becomes_non_intrinsic_call(self):
        node = parse_clean("PrepareUniform(register);").nodes[0]
        assert isinstance(node, NonIntrinsicCall)
        assert node.name == "PrepareUniform"

    def test_adjoint_flags_gate(self):
        node = parse_clean("Adjoint S(q);").nodes[0]
        assert node.adjoint is True

    def test_chained_controlled_is_rejected(self):
        _, diags = parse_source("Controlled Controlled X(a, b, q);")
        assert any(d.kind is DiagnosticKind.UNEXPECTED_TOKEN for d in diags)


class TestExpressions:
    def test_condition_expression(self):
        program = parse_clean("if nQubits > 63 { }")
        condition = program.nodes[0].condition
        assert condition.repr == "nQubits>63"
        assert len(condition.elements) == 3

    def test_single_atom_before_semicolon(self):
        program = parse_clean("let y = x;")
        assert program.nodes[0].expression.repr == "x"

    def test_flat_seven_element_argument(self):
        program = parse_clean("let iterations = Round(0.25 * PI() / angle - 0.5);")
        call = program.nodes[0].expression.elements[0]
        assert call.repr == "Round(0.25*PI()/angle-0.5, )"
        inner = call.params[0][0]
        assert len(inner.elements) == 7

    def test_empty_expression_is_diagnosed(self):
        _, diags = parse_source("let x = ;")
        assert any(d.kind is DiagnosticKind.EMPTY_EXPRESSION for d in diags)

    def test_unbalanced_parens_are_diagnosed(self):
        _, diags = parse_source("let x = (1 + 2;")
        assert any(d.kind is DiagnosticKind.UNBALANCED_DELIMITER for d in diags)

    def test_word_operators_keep_word_boundaries(self):
        program = parse_clean("if ready and armed { }")
        assert program.nodes[0].condition.repr == "ready and armed"

    def test_grouping_parens_are_kept_in_repr(self):
        program = parse_clean("let x = (a + b) * c;")
        assert program.nodes[0].expression.repr == "(a+b)*c"

    def test_closed_range_folds(self):
        program = parse_clean("for i in 0..3 { }")
        element = program.nodes[0].vals.elements[0]
        assert isinstance(element, RangeParam)
        assert element.repr == "0..3"
        assert element.lower.repr == "0"
        assert element.upper.repr == "3"
        assert element.step is None

    def test_stepped_range_folds(self):
        program = parse_clean("for i in 0..2..10 { }")
        element = program.nodes[0].vals.elements[0]
        assert (element.lower.repr, element.step.repr, element.upper.repr) == ("0", "2", "10")

    def test_variable_vs_identifier_resolution(self):
        source = """function F(nQubits : Int) : Int {
            let nItems = 1 <<< nQubits;
            return nItems;
        }"""
        program = parse_clean(source)
        decl = program.nodes[0]
        let_node, return_node = decl.nodes
        shift_expr = let_node.expression
        # parameter reference serializes with "id"
        assert shift_expr.elements[2].serialize() == {"repr": "nQubits", "id": "nQubits"}
        # let-bound reference serializes with "name"
        assert return_node.expr.elements[0].serialize() == {"repr": "nItems", "name": "nItems"}


class TestParameters:
    def test_typed_declaration_records_symbol_not_repr(self):
        program = parse_clean("function F(nQubits : Int) : Int { return nQubits; }")
        decl = program.nodes[0]
        assert decl.params[0][0].repr == "nQubits"
        assert decl.param_types == [("nQubits", "Int")]

    def test_empty_parens_give_empty_params(self):
        program = parse_clean("operation F() : Unit { }")
        assert program.nodes[0].params == []

    def test_call_arguments_are_singleton_groups(self):
        program = parse_clean("Rxx(1.5, register[0], register[1]);")
        node = program.nodes[0]
        assert isinstance(node, Rxx)
        assert node.rads.repr == "1.5"
        assert node.qubit0.repr == "register[0]"
        assert node.qubit1.repr == "register[1]"


class TestScopes:
    def test_empty_scope(self):
        program = parse_clean("operation F() : Unit { }")
        assert program.nodes[0].nodes == []

    def test_single_statement_scope(self):
        program = parse_clean("operation F() : Unit { X(q); }")
        assert isinstance(program.nodes[0].nodes[0], X)

    def test_missing_closing_brace(self):
        _, diags = parse_source("operation F() : Unit { X(q);")
        assert any(d.kind is DiagnosticKind.UNBALANCED_SCOPE for d in diags)

    def test_nested_scopes_balance(self):
        source = "operation F() : Unit { if a { while b { X(q); } } }"
        program = parse_clean(source)
        outer = program.nodes[0].nodes[0]
        assert isinstance(outer, If)
        inner = outer.if_clause[0]
        assert isinstance(inner, WhileLoop)
        assert isinstance(inner.inside[0], X)


class TestCallable:
    def test_operation_shape(self):
        source = read_data("reflect_about_marked.qs")
        program = parse_clean(source)
        decl = program.nodes[0]
        assert isinstance(decl, CallableDecl)
        assert decl.kind_tag == "operation"
        assert decl.name == "ReflectAboutMarked"
        assert decl.modifiers == []
        assert decl.return_type is None

    def test_characteristics_become_modifiers(self):
        program = parse_clean(
            "operation P(qs : Qubit[]) : Unit is Adj + Ctl { }")
        assert program.nodes[0].modifiers == ["Adj", "Ctl"]

    def test_function_return_type(self):
        program = parse_clean("function G(n : Int) : Int { return n; }")
        assert program.nodes[0].return_type.name == "Int"

    def test_empty_function(self):
        program = parse_clean("function Id() : Unit {}")
        decl = program.nodes[0]
        assert (decl.kind_tag, decl.nodes, decl.params, decl.modifiers) == (
            "function", [], [], [])
        assert decl.return_type is None


class TestConjugation:
    def test_minimal_within_apply(self):
        program = parse_clean("within { X(q); } apply { H(q); }")
        node = program.nodes[0]
        assert isinstance(node, Conjugation)
        assert [type(n) for n in node.within] == [X]
        assert [type(n) for n in node.applies] == [H]

    def test_empty_blocks(self):
        node = parse_clean("within { } apply { }").nodes[0]
        assert node.within == [] and node.applies == []

    def test_missing_apply_is_diagnosed(self):
        _, diags = parse_source("within { X(q); }")
        assert any(d.kind is DiagnosticKind.MISSING_APPLY for d in diags)

    def test_full_reflection_blocks(self):
        program = parse_clean(read_data("reflect_about_marked.qs"))
        conj = program.nodes[0].nodes[1]
        kinds = [type(n) for n in conj.within]
        assert kinds == [Comment, Comment, X, H, Comment, Comment, Comment, ForLoop]
        assert [type(n) for n in conj.applies] == [ControlledX]


class TestLoops:
    def test_for_over_indexed_slice(self):
        program = parse_clean("for q in inputQubits[...2...] { X(q); }")
        loop = program.nodes[0]
        assert loop.variable.name == "q"
        assert len(loop.vals.elements) == 1
        element = loop.vals.elements[0]
        assert isinstance(element, IndexAccess)
        assert element.repr == "inputQubits[...2...]"
        assert [type(n) for n in loop.inside] == [X]

    def test_while_with_bool_condition(self):
        loop = parse_clean("while false { }").nodes[0]
        assert loop.condition.repr == "false"
        assert loop.inside == []

    def test_repeat_until_fixup(self):
        source = "repeat { X(q); } until done fixup { H(q); }"
        node = parse_clean(source).nodes[0]
        assert isinstance(node, RepeatUntilFixup)
        assert [type(n) for n in node.inside] == [X]
        assert node.condition.repr == "done"
        assert [type(n) for n in node.fixup] == [H]

    def test_repeat_until_semicolon(self):
        node = parse_clean("repeat { } until finished;").nodes[0]
        assert node.fixup == []

    def test_missing_in_keyword(self):
        _, diags = parse_source("for q of xs { }")
        assert any(d.kind is DiagnosticKind.UNEXPECTED_TOKEN for d in diags)


class TestAllocation:
    def test_singleton(self):
        node = parse_clean("use outputQubit = Qubit();").nodes[0]
        assert node.kind_tag == "use"
        assert node.name == "outputQubit"
        assert node.qubits.length.val == 1
        assert node.qubits.is_array is False

    def test_sized_register(self):
        node = parse_clean("use register = Qubit[2];").nodes[0]
        assert node.qubits.length.val == 2
        assert node.qubits.is_array is True

    def test_borrow(self):
        node = parse_clean("borrow b = Qubit[4];").nodes[0]
        assert node.kind_tag == "borrow"
        assert node.qubits.length.val == 4

    def test_non_qubit_rhs_is_rejected(self):
        _, diags = parse_source("use q = Foo();")
        assert any(d.kind is DiagnosticKind.UNEXPECTED_TOKEN for d in diags)


class TestGateApplications:
    def test_identity_gate(self):
        node = parse_clean("I(q);").nodes[0]
        assert node.target.repr == "q"

    def test_measure_unwraps_bracket_lists(self):
        node = parse_clean("Measure([PauliX], [q]);").nodes[0]
        assert isinstance(node, Measure)
        assert node.basis.val is Pauli.PauliX
        assert [q.repr for q in node.qubits] == ["q"]

    def test_measure_multiple_qubits(self):
        node = parse_clean("Measure([PauliZ], [q0, q1]);").nodes[0]
        assert [q.repr for q in node.qubits] == ["q0", "q1"]

    def test_arity_mismatch_is_bad_argument(self):
        _, diags = parse_source("CNOT(q);")
        assert any(d.kind is DiagnosticKind.BAD_ARGUMENT for d in diags)

    def test_literal_qubit_argument_is_bad_argument(self):
        _, diags = parse_source("X(5);")
        assert any(d.kind is DiagnosticKind.BAD_ARGUMENT for d in diags)

    def test_non_pauli_measure_basis_is_bad_argument(self):
        _, diags = parse_source("Measure([q], [q]);")
        assert any(d.kind is DiagnosticKind.BAD_ARGUMENT for d in diags)

    def test_computed_angle_argument(self):
        node = parse_clean("Rz(2.0 * theta, q);").nodes[0]
        assert node.rads.repr == "2*theta"


class TestBindings:
    def test_let(self):
        node = parse_clean("let nItems = 1 <<< nQubits;").nodes[0]
        assert isinstance(node, LetBinding)
        assert node.variable.name == "nItems"
        assert node.expression.repr == "1<<<nQubits"

    def test_mutable_and_set(self):
        program = parse_clean("mutable acc = 0; set acc = acc + 1;")
        assert isinstance(program.nodes[0], MutableBinding)
        assert isinstance(program.nodes[1], SetAssignment)
        assert program.nodes[1].expression.repr == "acc+1"

    def test_return(self):
        node = parse_clean("return iterations;").nodes[0]
        assert isinstance(node, Return)
        assert node.expr.repr == "iterations"

    def test_fail_requires_string(self):
        node = parse_clean('fail "This sample supports at most 63 qubits.";').nodes[0]
        assert isinstance(node, Fail)
        assert node.msg.val == '"This sample supports at most 63 qubits."'
        _, diags = parse_source("fail 42;")
        assert any(d.kind is DiagnosticKind.UNEXPECTED_TOKEN for d in diags)

    def test_if_elif_else(self):
        source = "if a { X(q); } elif b { Y(q); } else { Z(q); }"
        node = parse_clean(source).nodes[0]
        assert node.condition.repr == "a"
        assert len(node.elif_clauses) == 1
        assert node.elif_clauses[0].condition.repr == "b"
        assert len(node.else_clause) == 1

    def test_open_and_import(self):
        program = parse_clean("open Microsoft.Quantum.Math;\nimport Std.Math.*;")
        assert isinstance(program.nodes[0], Import)
        assert program.nodes[0].path == "Microsoft.Quantum.Math"
        assert program.nodes[1].path == "Std.Math.*"

    def test_struct(self):
        node = parse_clean("struct Pair { First : Int, Second : Double }").nodes[0]
        assert isinstance(node, Struct)
        assert node.fields == [("First", "Int"), ("Second", "Double")]


class TestNamespace:
    def test_children_are_spliced(self):
        source = "namespace Sample.App { operation F() : Unit { } }"
        program = parse_clean(source)
        assert len(program.nodes) == 1
        assert isinstance(program.nodes[0], CallableDecl)


class TestGoldenTrees:
    def test_reflection_operation_matches_expected_tree(self):
        program = parse_clean(read_data("reflect_about_marked.qs"))
        expected = json.loads(read_data("reflect_about_marked.expected.json"))
        assert program.nodes[0].serialize() == expected

    def test_iteration_function_reprs(self):
        program = parse_clean(read_data("optimal_iterations.qs"))
        reprs = {e.repr for e in walk_expressions(program.nodes[0])}
        for expected in (
            "nQubits>63",
            "1<<<nQubits",
            "ArcSin(1/Sqrt(IntAsDouble(nItems, ), ), )",
            "Round(0.25*PI()/angle-0.5, )",
            "iterations",
        ):
            assert expected in reprs


class TestErrorRecovery:
    def test_recovers_at_next_statement(self):
        source = "let = 5;\nX(q);"
        program, diags = parse_source(source)
        assert diags
        assert any(isinstance(n, X) for n in program.nodes)

    def test_diagnostic_names_found_kind(self):
        _, diags = parse_source("operation 42() : Unit { }")
        messages = [d.message for d in diags]
        assert any("Int" in m and "expected" in m for m in messages)

    def test_never_stalls_on_junk(self):
        program, diags = parse_source(";; } ) use ;;; within")
        assert diags  # and parsing terminated


class TestProperties:
    def test_serialization_identical_across_parses(self, data_dir):
        for name in ("reflect_about_marked.qs", "optimal_iterations.qs", "grover.qs"):
            source = (data_dir / name).read_text(encoding="utf-8")
            first, _ = parse_source(source)
            second, _ = parse_source(source)
            assert serialize_ast(first) == serialize_ast(second)

    def test_repr_compositionality_over_corpus(self, data_dir):
        for name in ("reflect_about_marked.qs", "optimal_iterations.qs",
                     "grover.qs", "ising_rotations.qs"):
            program = parse_clean((data_dir / name).read_text(encoding="utf-8"))
            expressions = walk_expressions(program)
            assert expressions
            for expr in expressions:
                assert expr.repr == "".join(el.repr for el in expr.elements)

    def test_randomized_brace_nesting_balances(self):
        rng = random.Random(4242)

        def gen_block(depth):
            lines = []
            for _ in range(rng.randint(0, 3)):
                roll = rng.random()
                if roll < 0.4 or depth >= 4:
                    lines.append("X(q);")
                elif roll < 0.6:
                    lines.append("if a { " + gen_block(depth + 1) + " }")
                elif roll < 0.8:
                    lines.append("while b { " + gen_block(depth + 1) + " }")
                else:
                    lines.append("within { " + gen_block(depth + 1)
                                 + " } apply { " + gen_block(depth + 1) + " }")
            return " ".join(lines)

        for _ in range(200):
            source = "operation F() : Unit { " + gen_block(0) + " }"
            program, diags = parse_source(source)
            assert diags == [], source
            assert source.count("{") == source.count("}")

    def test_parser_progress_on_randomly_broken_sources(self):
        rng = random.Random(777)
        base = ("operation F(qs : Qubit[]) : Unit { if a { X(q); } "
                "while b { Y(q); } within { H(q); } apply { Z(q); } }")
        for _ in range(200):
            mutated = list(base)
            for _ in range(rng.randint(1, 3)):
                index = rng.randrange(len(mutated))
                mutated[index] = rng.choice(["{", "}", ";", " ", "(", ")"])
            source = "".join(mutated)
            tokens, _ = tokenize(source)
            program, _ = parse_program(tokens)  # must terminate
            assert program is not None

import pytest

import boopcheck.syntax as S
from boopcheck.lexer import lex
from boopcheck.parser import parse_program

from conftest import LISTINGS, fixture_text


def parse(code: str) -> S.Program:
    program, diags = parse_program(lex(code))
    assert program is not None, [d.message for d in diags]
    return program


def parse_expr(code: str) -> S.Expr:
    program = parse(f"let probe =\n  {code}")
    return program.items[0].bindings[0].body


class TestItems:
    def test_listing1_shape(self):
        program = parse(fixture_text("listings/listing1.ml"))
        assert len(program.items) == 4
        typedef = program.items[0]
        assert isinstance(typedef, S.TypeDef)
        assert typedef.name == "nat"
        assert [c.name for c in typedef.constructors] == ["Zero", "Succ"]
        assert typedef.constructors[0].arg is None
        assert typedef.constructors[1].arg == S.TypeName("nat")
        lets = program.items[1:]
        assert all(isinstance(item, S.LetBinding) for item in lets)
        assert [item.bindings[0].name for item in lets] == ["plus", "mult", "less_than"]

    def test_listing2_and_chain(self):
        program = parse(fixture_text("listings/listing2.ml"))
        assert len(program.items) == 2
        second = program.items[1]
        assert second.rec_flag
        assert second.and_chained
        assert [b.name for b in second.bindings] == ["div", "safe_div"]

    @pytest.mark.parametrize("name", LISTINGS)
    def test_all_listings_parse_cleanly(self, name):
        program, diags = parse_program(lex(fixture_text(name)))
        assert diags == []
        assert program is not None

    def test_value_binding_has_no_params(self):
        binding = parse("let answer : int = 42").items[0].bindings[0]
        assert binding.params == []
        assert not binding.is_function
        assert binding.return_type == S.TypeName("int")


class TestExpressions:
    def test_application_left_associated(self):
        expr = parse_expr("f a b c")
        assert isinstance(expr, S.Apply)
        assert expr.arg == S.Ident(None, "c")
        assert expr.fn == S.Apply(S.Apply(S.Ident(None, "f"), S.Ident(None, "a")), S.Ident(None, "b"))

    def test_precedence_arithmetic(self):
        expr = parse_expr("1 + 2 * 3")
        assert expr == S.BinOp("+", S.IntLit(1), S.BinOp("*", S.IntLit(2), S.IntLit(3)))

    def test_comparison_binds_looser_than_arithmetic(self):
        expr = parse_expr("a + 1 = b")
        assert isinstance(expr, S.BinOp) and expr.op == "="

    def test_cons_right_associative(self):
        expr = parse_expr("1 :: 2 :: []")
        assert expr == S.BinOp("::", S.IntLit(1), S.BinOp("::", S.IntLit(2), S.ListLit([])))

    def test_sequence_and_assignment(self):
        expr = parse_expr("a := 1; b := 2")
        assert isinstance(expr, S.Sequence)
        assert isinstance(expr.first, S.BinOp) and expr.first.op == ":="
        assert isinstance(expr.second, S.BinOp) and expr.second.op == ":="

    def test_assignment_of_tuple(self):
        expr = parse_expr("p := 1, 2")
        assert isinstance(expr, S.BinOp) and expr.op == ":="
        assert isinstance(expr.rhs, S.Tuple)

    def test_unparenthesized_tuple_scrutinee(self):
        expr = parse_expr("match n, m with | _, Zero -> n | _ -> m")
        assert isinstance(expr, S.Match)
        assert isinstance(expr.scrutinee, S.Tuple)
        assert isinstance(expr.arms[0].pattern, S.TuplePat)

    def test_deref_and_not(self):
        expr = parse_expr("not (less_than !r b)")
        assert isinstance(expr, S.UnOp) and expr.op == "not"
        inner = expr.operand
        assert isinstance(inner, S.Paren)
        apply = inner.inner
        assert isinstance(apply, S.Apply)
        assert apply.fn.arg == S.UnOp("!", S.Ident(None, "r"))

    def test_ref_parses_as_ordinary_application(self):
        expr = parse_expr("ref Zero")
        assert expr == S.Apply(S.Ident(None, "ref"), S.ConstructorApp("Zero", []))

    def test_if_extends_to_else_branch(self):
        expr = parse_expr("if a then b else c + 1")
        assert isinstance(expr, S.If)
        assert expr.orelse == S.BinOp("+", S.Ident(None, "c"), S.IntLit(1))

    def test_dangling_else_attaches_to_inner_if(self):
        expr = parse_expr("if a then if b then x else y")
        assert expr.orelse is None
        assert expr.then.orelse == S.Ident(None, "y")

    def test_sequence_stops_if_without_else(self):
        expr = parse_expr("if a then b; c")
        assert isinstance(expr, S.Sequence)
        assert isinstance(expr.first, S.If)

    def test_match_arm_swallows_sequence(self):
        expr = parse_expr("match x with | _ -> a; b")
        assert isinstance(expr, S.Match)
        assert isinstance(expr.arms[0].body, S.Sequence)

    def test_let_in_with_tuple_pattern(self):
        expr = parse_expr("let (q', r') = f a in (Succ q', r')")
        assert isinstance(expr, S.LetIn)
        binding = expr.bindings[0]
        assert isinstance(binding.pattern, S.TuplePat)
        assert binding.name is None

    def test_begin_end_acts_as_parens(self):
        assert parse_expr("begin a + b end") == parse_expr("(a + b)")

    def test_while_and_for(self):
        loop = parse_expr("while c do x := !x + 1 done")
        assert isinstance(loop, S.While)
        loop2 = parse_expr("for i = 1 to 10 do f i done")
        assert isinstance(loop2, S.For)
        assert loop2.direction == "to"

    def test_lambda_and_function(self):
        lam = parse_expr("fun x y -> x")
        assert isinstance(lam, S.Lambda)
        assert len(lam.params) == 2
        fm = parse_expr("function | Zero -> 0 | Succ _ -> 1")
        assert isinstance(fm, S.FunctionMatch)
        assert len(fm.arms) == 2

    def test_unit_and_empty_list(self):
        assert parse_expr("()") == S.UnitLit()
        assert parse_expr("[]") == S.ListLit([])
        assert parse_expr("[1; 2]") == S.ListLit([S.IntLit(1), S.IntLit(2)])


class TestSpans:
    def test_child_spans_within_parent(self):
        source = fixture_text("listings/listing2.ml")
        program = parse(source)

        def check(expr: S.Expr):
            for child in S.child_exprs(expr):
                assert expr.span.start <= child.span.start <= child.span.end <= expr.span.end
                check(child)

        for item in program.items:
            assert isinstance(item, S.LetBinding)
            for binding in item.bindings:
                check(binding.body)

    def test_node_spans_slice_source(self):
        source = "let f (x: nat) : nat = Succ (plus x one)"
        program = parse(source)
        body = program.items[0].bindings[0].body
        assert source.encode()[body.span.start : body.span.end].decode() == "Succ (plus x one)"


class TestParseErrors:
    def test_truncated_tuple_reports_end_of_input(self):
        program, diags = parse_program(lex("let x = (1,"))
        assert program is None
        assert [d.rule_id for d in diags] == ["X010"]
        assert "end of input" in diags[0].message

    def test_recovery_reports_multiple_errors(self):
        code = "let x = (1,\nlet y = )\nlet z = 3"
        program, diags = parse_program(lex(code))
        assert program is None
        assert len(diags) >= 2
        assert all(d.rule_id == "X010" for d in diags)

    def test_expected_token_reported(self):
        program, diags = parse_program(lex("type t ="))
        assert program is None
        assert "constructor name" in diags[0].message

    def test_unsupported_construct_is_visible(self):
        program, diags = parse_program(lex("module M = struct end"))
        assert program is None
        assert diags[0].rule_id == "X010"

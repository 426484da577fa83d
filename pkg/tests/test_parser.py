"""Parser: precedence, raw trees, statements, document structure."""
from __future__ import annotations

from fractions import Fraction

import pytest

from mathpar.errors import MissingDifferential, ParseError
from mathpar.expr import (
    Add,
    Derivative,
    Equation,
    Func,
    Integral,
    Mul,
    Number,
    Pow,
    SolveCall,
    Symbol,
    SymbolName,
    UnitSym,
    ValueCall,
    mul,
    neg,
    num,
    pow_,
    sub,
    sym,
    unit,
)
from mathpar.parser import (
    ActiveSegment,
    Assignment,
    BareExpr,
    InlineMath,
    PassiveSegment,
    PrintStmt,
    TextChunk,
    parse_document,
    parse_expression,
)

from conftest import read_fixture


def parse(text):
    return parse_expression(text)


class TestAtoms:
    def test_number(self):
        assert parse("4.2") == Number(Fraction("4.2"))

    def test_symbol(self):
        assert parse("M") == sym("M")

    def test_subscripted_symbol(self):
        assert parse("c_i") == Symbol(SymbolName("c", "i"))
        assert parse("q_{12}") == Symbol(SymbolName("q", "12"))

    def test_registered_name_is_unit(self):
        assert parse("kg") == unit("kg")
        assert parse("\\degreeC") == unit("°C")

    def test_subscripted_unit_name_is_variable(self):
        assert parse("kg_2") == Symbol(SymbolName("kg", "2"))

    def test_greek(self):
        assert parse("\\lambda") == sym("lambda")
        assert parse("\\lambda_v") == Symbol(SymbolName("lambda", "v"))

    def test_function(self):
        assert parse("\\cos(x)") == Func("cos", sym("x"))

    def test_function_requires_parens(self):
        with pytest.raises(ParseError):
            parse("\\cos x")


class TestPrecedence:
    def test_addition_is_flat_raw(self):
        e = parse("a + b + c")
        assert isinstance(e, Add) and len(e.terms) == 3

    def test_subtraction_builds_negated_term(self):
        assert parse("a - b") == Add((sym("a"), neg(sym("b"))))

    def test_unary_minus_binds_one_term(self):
        # -a + b reads as (-a) + b
        assert parse("-a + b") == Add((neg(sym("a")), sym("b")))

    def test_unary_minus_with_power(self):
        # -a^2 reads as -(a^2)
        assert parse("-a^2") == neg(Pow(sym("a"), num(2)))

    def test_unary_minus_takes_whole_product(self):
        assert parse("-2 a") == neg(mul(num(2), sym("a")))

    def test_double_negation(self):
        assert parse("a - -b") == Add((sym("a"), neg(neg(sym("b")))))

    def test_multiplication_before_addition(self):
        e = parse("a + b c")
        assert e == Add((sym("a"), mul(sym("b"), sym("c"))))

    def test_power_before_multiplication(self):
        e = parse("2 x^3")
        assert e == Mul(Fraction(1), ((num(2), 1), (Pow(sym("x"), num(3)), 1)))

    def test_power_right_associative(self):
        assert parse("x^2^3") == Pow(sym("x"), Pow(num(2), num(3)))

    def test_braced_exponent(self):
        assert parse("x^{a + b}") == Pow(sym("x"), Add((sym("a"), sym("b"))))

    def test_negative_exponent(self):
        assert parse("x^-2") == Pow(sym("x"), neg(num(2)))

    def test_division_takes_one_operand(self):
        e = parse("a/b c")
        assert e == Mul(Fraction(1), ((sym("a"), 1), (sym("b"), -1), (sym("c"), 1)))

    def test_sign_after_explicit_star(self):
        assert parse("2 * -3") == mul(num(2), neg(num(3)))


class TestMultiplicationSpellings:
    def test_juxtaposition_equals_star_equals_cdot(self):
        spellings = ["a b", "a*b", "a \\cdot b"]
        trees = [parse(s) for s in spellings]
        assert trees[0] == trees[1] == trees[2]

    def test_identifier_before_paren_multiplies(self):
        e = parse("M c_v(100 \\degreeC)")
        assert isinstance(e, Mul) and len(e.factors) == 3

    def test_number_juxtaposition(self):
        assert parse("2x") == mul(num(2), sym("x"))

    def test_paper_style_term(self):
        e = parse("M c_i (0 - T)")
        expected = mul(sym("M"), Symbol(SymbolName("c", "i")), sub(num(0), sym("T")))
        assert e == expected

    def test_raw_tree_is_not_simplified(self):
        e = parse("2 - 2")
        assert isinstance(e, Add)


class TestOperators:
    def test_integral(self):
        e = parse("\\int(f) d x")
        assert e == Integral(sym("f"), SymbolName("x"))

    def test_integral_subscripted_variable(self):
        e = parse("\\int(q) d q_1")
        assert e == Integral(sym("q"), SymbolName("q", "1"))

    def test_missing_differential(self):
        with pytest.raises(MissingDifferential):
            parse("\\int(f) d")
        with pytest.raises(MissingDifferential):
            parse_document("g = \\int(f) d;")

    def test_derivative(self):
        assert parse("\\D_{x}(g)") == Derivative(sym("g"), SymbolName("x"))

    def test_derivative_needs_subscript(self):
        with pytest.raises(ParseError):
            parse("\\D(g)")

    def test_solve(self):
        e = parse("\\solve(q = a + b)")
        assert e == SolveCall(Equation(sym("q"), Add((sym("a"), sym("b")))))

    def test_value(self):
        assert parse("\\value(m)") == ValueCall(sym("m"))

    def test_print_is_not_an_expression(self):
        with pytest.raises(ParseError):
            parse("\\print(x)")

    def test_unknown_command(self):
        with pytest.raises(ParseError):
            parse("\\frobnicate(x)")

    def test_nested_operators(self):
        e = parse("\\D_{x}(\\int(f) d x)")
        assert e == Derivative(Integral(sym("f"), SymbolName("x")), SymbolName("x"))


class TestStatements:
    def doc(self, text):
        return parse_document(text)

    def active(self, text):
        segments = [s for s in self.doc(text).segments if isinstance(s, ActiveSegment)]
        return [stmt for seg in segments for stmt in seg.statements]

    def test_assignment(self):
        (stmt,) = self.active("f = 2x;")
        assert isinstance(stmt, Assignment)
        assert stmt.name == SymbolName("f")

    def test_greek_assignment(self):
        (stmt,) = self.active("\\lambda = 2300 kJ/kg;")
        assert isinstance(stmt, Assignment)
        assert stmt.name == SymbolName("lambda")

    def test_subscripted_assignment(self):
        (stmt,) = self.active("q_1 = M;")
        assert stmt.name == SymbolName("q", "1")

    def test_bare_expression(self):
        (stmt,) = self.active("2 + 2;")
        assert isinstance(stmt, BareExpr)

    def test_print_statement(self):
        (stmt,) = self.active("\\print(f, g);")
        assert isinstance(stmt, PrintStmt) and len(stmt.args) == 2

    def test_equals_in_expression_position_rejected(self):
        with pytest.raises(ParseError):
            self.doc("x + 1 = 2;")

    def test_passive_text_terminates_statement(self):
        stmts = self.active('q_2 = M r " The heat to melt ice" q_3 = M;')
        assert len(stmts) == 2
        assert all(isinstance(s, Assignment) for s in stmts)

    def test_empty_statements_skipped(self):
        stmts = self.active("a = 1; ; ;; b = 2;")
        assert len(stmts) == 2

    def test_missing_terminator(self):
        with pytest.raises(ParseError):
            self.doc("a = 1 b = 2")

    def test_statement_spans_cover_source(self):
        text = "a = 1; b = 22;"
        stmts = self.active(text)
        assert text[slice(*stmts[0].span.as_tuple())] == "a = 1"
        assert text[slice(*stmts[1].span.as_tuple())] == "b = 22"


class TestDocuments:
    def test_segments_alternate(self):
        doc = parse_document('"intro" a = 1; "middle" b = 2;')
        types = [type(s) for s in doc.segments]
        assert types == [PassiveSegment, ActiveSegment, PassiveSegment, ActiveSegment]

    def test_semicolon_only_segment_dropped(self):
        doc = parse_document('"a" ;; "b"')
        assert [type(s) for s in doc.segments] == [PassiveSegment, PassiveSegment]

    def test_passive_chunks(self):
        doc = parse_document('"Heat $q_1 = M c$ flows."')
        (seg,) = doc.segments
        assert isinstance(seg, PassiveSegment)
        text1, math, text2 = seg.chunks
        assert text1 == TextChunk("Heat ")
        assert isinstance(math, InlineMath)
        assert math.expr == Equation(
            Symbol(SymbolName("q", "1")), mul(sym("M"), sym("c"))
        )
        assert text2 == TextChunk(" flows.")

    def test_inline_math_never_fails_the_document(self):
        doc = parse_document('"broken $x +$ math"')
        (seg,) = doc.segments
        assert TextChunk("$x +$") in seg.chunks

    def test_unclosed_dollar_is_text(self):
        doc = parse_document('"price is $5"')
        (seg,) = doc.segments
        assert seg.chunks == (TextChunk("price is $5"),)

    def test_escaped_quotes_unescape_in_chunks(self):
        doc = parse_document(r'"say \"hi\""')
        (seg,) = doc.segments
        assert seg.chunks == (TextChunk('say "hi"'),)

    def test_verbatim_preserved(self):
        source = '"Heat $q$ flows."'
        doc = parse_document(source)
        assert doc.segments[0].verbatim == source

    def test_heat_transfer_document_shape(self):
        doc = parse_document(read_fixture("ex9.txt"))
        active = [s for s in doc.segments if isinstance(s, ActiveSegment)]
        stmts = [stmt for seg in active for stmt in seg.statements]
        assignments = [s for s in stmts if isinstance(s, Assignment)]
        prints = [s for s in stmts if isinstance(s, PrintStmt)]
        assert len(prints) == 1
        names = {str(s.name) for s in assignments}
        assert {"M", "T", "q", "c_v", "c_i", "r", "lambda",
                "q_1", "q_2", "q_3", "q_4", "mass"} <= names


class TestExpressionEntry:
    def test_leftover_tokens_rejected(self):
        with pytest.raises(ParseError):
            parse_expression("a b ;")

    def test_empty_input_rejected(self):
        with pytest.raises(ParseError):
            parse_expression("")

    def test_error_span_points_at_token(self):
        with pytest.raises(ParseError) as err:
            parse_expression("a + * b")
        assert err.value.span.as_tuple() == (4, 5)

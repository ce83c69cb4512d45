from fractions import Fraction as F

import pytest
from hypothesis import given

from ratluk.algebra import UnitRational
from ratluk.semantics import evaluate
from ratluk.syntax import (
    Bottom,
    Delta,
    DeltaN,
    Iff,
    Implies,
    Join,
    LanguageError,
    Meet,
    Nabla,
    Neg,
    ParseError,
    Plus,
    Times,
    Var,
    check_ql,
    check_ratluk,
    depth,
    dimension,
    language_of,
    multiple,
    parse,
    parse_ql,
    parse_ratluk,
    to_text,
    translate_i1,
    translate_i2,
)
from strategies import formulas, points

x0, x1, x2 = Var(0), Var(1), Var(2)


class TestNodes:
    def test_nabla_scalar_coerced(self):
        node = Nabla(F(1, 2), x0)
        assert isinstance(node.r, UnitRational)
        assert Nabla("2/4", x0) == node

    def test_invalid_nodes(self):
        with pytest.raises(ValueError):
            Nabla(F(3, 2), x0)
        with pytest.raises(ValueError):
            DeltaN(0, x0)
        with pytest.raises(ValueError):
            Var(-1)

    def test_derived_shapes(self):
        assert Plus(x0, x1) == Implies(Neg(x0), x1)
        assert Join(x0, x1) == Implies(Implies(x0, x1), x1)
        assert Delta(F(1, 3), x0) == Neg(Nabla(F(1, 3), Neg(x0)))
        assert Bottom(x0) == Neg(Implies(x0, x0))
        assert multiple(0, x0) == Bottom(x0)
        assert multiple(1, x0) == x0
        assert multiple(3, x0) == Plus(Plus(x0, x0), x0)

    def test_dimension_and_depth(self):
        phi = Implies(x0, Neg(Var(4)))
        assert dimension(phi) == 5
        assert depth(phi) == 2
        assert dimension(Bottom(x2)) == 3

    def test_language(self):
        assert language_of(Implies(x0, x1)) == "luk"
        assert language_of(Nabla(F(1, 2), x0)) == "ql"
        assert language_of(DeltaN(2, x0)) == "ratluk"
        assert language_of(Implies(DeltaN(2, x0), Nabla(F(1, 2), x0))) == "mixed"
        with pytest.raises(LanguageError):
            check_ql(DeltaN(2, x0))
        with pytest.raises(LanguageError):
            check_ratluk(Nabla(1, x0))


class TestParser:
    def test_examples(self):
        assert parse("nabla(1/2) x0 -> x0") == Implies(Nabla(F(1, 2), x0), x0)
        assert parse("~x0 + x1") == Implies(Neg(Neg(x0)), x1)
        assert parse("delta(3) (x0 * x0)") == DeltaN(3, Times(x0, x0))

    def test_precedence(self):
        assert parse("x0 * x1 + x2") == Plus(Times(x0, x1), x2)
        assert parse("x0 + x1 /\\ x2") == Meet(Plus(x0, x1), x2)
        assert parse("x0 /\\ x1 \\/ x2") == Join(Meet(x0, x1), x2)
        assert parse("x0 \\/ x1 -> x2") == Implies(Join(x0, x1), x2)
        assert parse("x0 -> x1 <-> x2") == Iff(Implies(x0, x1), x2)
        assert parse("~x0 * x1") == Times(Neg(x0), x1)
        assert parse("Delta(1/2) x0 + x1") == Plus(Delta(F(1, 2), x0), x1)

    def test_associativity(self):
        assert parse("x0 -> x1 -> x2") == Implies(x0, Implies(x1, x2))
        assert parse("x0 + x1 + x2") == Plus(Plus(x0, x1), x2)

    def test_unicode_aliases(self):
        assert parse("¬x0 ⊕ x1") == parse("~x0 + x1")
        assert parse("∇(1/3) x0 → δ(2) x1") == parse("nabla(1/3) x0 -> delta(2) x1")
        assert parse("Δ(1/2) x0 ↔ x0 ⊙ x0") == parse("Delta(1/2) x0 <-> x0 * x0")

    def test_scalar_literals_reduced(self):
        assert parse("nabla(2/4) x0") == Nabla(F(1, 2), x0)
        assert parse("nabla(1) x0") == Nabla(1, x0)

    @pytest.mark.parametrize("text,pos", [
        ("x0 ->", 5),
        ("x0 + + x1", 5),
        ("(x0", 3),
        ("x0 x1", 3),
        ("nabla(3/2) x0", 0),
        ("nabla(1/0) x0", 0),
        ("delta(0) x0", 0),
        ("x0 & x1", 3),
        ("", 0),
    ])
    def test_errors_carry_position(self, text, pos):
        with pytest.raises(ParseError) as info:
            parse(text)
        assert info.value.pos == pos

    def test_language_restricted_parsers(self):
        assert parse_ql("Delta(1/2) x0") == Delta(F(1, 2), x0)
        assert parse_ratluk("delta(2) x0") == DeltaN(2, x0)
        with pytest.raises(ParseError) as info:
            parse_ql("x0 -> delta(2) x1")
        assert info.value.pos == 6
        with pytest.raises(ParseError) as info:
            parse_ratluk("x1 + nabla(1/2) x0")
        assert info.value.pos == 5


class TestPrinter:
    @pytest.mark.parametrize("text", [
        "x0 -> x1",
        "~x0 + x1",
        "(x0 * x1) \\/ ~x2",
        "Delta(1/3) x0 <-> nabla(2/5) (x0 /\\ x1)",
        "delta(2) x0 + delta(2) x0 <-> x0",
        "x0 -> (x1 -> x2)",
    ])
    def test_canonical_text_is_fixed_point(self, text):
        canon = to_text(parse(text))
        assert to_text(parse(canon)) == canon
        assert parse(canon) == parse(text)

    def test_sugar_recovered(self):
        assert to_text(Times(x0, x1)) == "x0 * x1"
        assert to_text(Meet(x0, x1)) == "x0 /\\ x1"
        assert to_text(Iff(x0, x1)) == "x0 <-> x1"
        assert to_text(Delta(F(1, 2), x0)) == "Delta(1/2) x0"

    @given(formulas(3, "ql"))
    def test_round_trip_ql(self, phi):
        assert parse(to_text(phi)) == phi

    @given(formulas(3, "ratluk"))
    def test_round_trip_ratluk(self, phi):
        assert parse(to_text(phi)) == phi


class TestTranslations:
    def test_i1_examples(self):
        assert translate_i1(DeltaN(2, x0)) == Delta(F(1, 2), x0)
        assert translate_i1(x0) == x0
        t = translate_i1(DeltaN(3, DeltaN(2, x0)))
        assert t == Delta(F(1, 3), Delta(F(1, 2), x0))
        assert evaluate(t, (1,)) == F(1, 6)

    def test_i2_examples(self):
        d = DeltaN(3, x0)
        assert translate_i2(Delta(F(2, 3), x0)) == Plus(d, d)
        assert translate_i2(Delta(1, x0)) == x0
        t = translate_i2(Nabla(F(1, 2), x0))
        assert t == Neg(DeltaN(2, Neg(x0)))
        assert evaluate(t, (0,)) == F(1, 2)

    def test_i2_zero_scalar(self):
        t = translate_i2(Delta(0, x0))
        assert evaluate(t, (1,)) == 0
        assert language_of(t) in ("luk", "ratluk")

    def test_wrong_language_rejected(self):
        with pytest.raises(LanguageError):
            translate_i1(Nabla(F(1, 2), x0))
        with pytest.raises(LanguageError):
            translate_i2(DeltaN(2, x0))

    @given(formulas(2, "ratluk"), points(2))
    def test_i1_preserves_values(self, phi, v):
        t = translate_i1(phi)
        assert language_of(t) in ("luk", "ql")
        assert evaluate(t, v) == evaluate(phi, v)

    @given(formulas(2, "ql"), points(2))
    def test_i2_preserves_values(self, phi, v):
        t = translate_i2(phi)
        assert language_of(t) in ("luk", "ratluk")
        assert evaluate(t, v) == evaluate(phi, v)

    @given(formulas(2, "ratluk"), points(2))
    def test_round_trip_semantics(self, phi, v):
        assert evaluate(translate_i2(translate_i1(phi)), v) == evaluate(phi, v)

import json
import random
from fractions import Fraction as F
from math import prod

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import sweep_extrema
from ratluk.axioms import dmv_identities, module_identities, mv_identities
from ratluk.generate import random_formula
from ratluk.pwl import (
    DEFAULT_MAX_CELLS,
    AffinePiece,
    CellBudgetExceeded,
    DimensionError,
    InvariantError,
    PwlFunc,
    cell_budget,
    check_invariants,
    clipped_affine,
    compile_formula,
    compile_ql,
    compile_ratluk,
    constant,
    dumps,
    from_dict,
    get_max_cells,
    loads,
    projection,
    pwl_delta,
    pwl_difference_witness,
    pwl_equal,
    pwl_eval,
    pwl_join,
    pwl_max,
    pwl_meet,
    pwl_min,
    pwl_multiple,
    pwl_neg,
    pwl_plus,
    pwl_scalar,
    pwl_sub,
    pwl_times,
    to_dict,
)
from ratluk.semantics import eval_ql, evaluate
from ratluk.syntax import DeltaN, LanguageError, Nabla, Var, parse, subformulas
from strategies import formulas, points

H = F(1, 2)
x = projection(1, 0)


class TestAffinePiece:
    def test_normalized(self):
        p = AffinePiece.make((2, 4, 6), 4)
        assert (p.num, p.den) == ((1, 2, 3), 2)
        assert p.coeffs == (H, F(1))
        assert p.constant == F(3, 2)

    def test_arithmetic(self):
        p = AffinePiece.from_fractions([H], F(1, 3))
        q = AffinePiece.from_fractions([F(1, 4)], F(0))
        assert (p + q).coeffs == (F(3, 4),)
        assert (p - q).constant == F(1, 3)
        assert p.complement().coeffs == (-H,)
        assert p.complement().constant == F(2, 3)
        assert p.scale(2).coeffs == (F(1),)
        assert p((F(1, 3),)) == F(1, 2)

    def test_compose(self):
        outer = AffinePiece.from_fractions([F(1), F(1)], F(0))
        inner = [AffinePiece.from_fractions([H], F(0)), AffinePiece.from_fractions([F(0)], H)]
        assert outer.compose(inner)((F(1),)) == F(1)

    def test_le_row(self):
        p = AffinePiece.from_fractions([H, F(1, 3)], F(0))
        assert p.le_row(F(1)) == (3, 2, 6)


class TestBasics:
    def test_constant_and_projection(self):
        assert projection(1, 0)(F(1, 3)) == F(1, 3)
        assert projection(2, 1)((H, F(3, 4))) == F(3, 4)
        zero = constant(2, 0)
        assert len(zero) == 1 and zero((H, H)) == 0
        with pytest.raises(IndexError):
            projection(2, 2)

    def test_plus_splits(self):
        f = pwl_plus(x, x)
        assert len(f) == 2
        assert [f(v) for v in (0, H, F(3, 4))] == [0, 1, 1]
        check_invariants(f)

    def test_times(self):
        f = pwl_times(x, x)
        assert len(f) == 2
        assert f(F(1, 4)) == 0 and f(F(3, 4)) == H
        check_invariants(f)

    def test_delta(self):
        f = pwl_delta(2, x)
        assert len(f) == 1
        assert f.cells[0].piece.coeffs == (H,)

    def test_scalar_and_neg(self):
        assert pwl_scalar(F(1, 3), x)(F(3, 4)) == F(1, 4)
        assert pwl_neg(x)(F(1, 5)) == F(4, 5)

    def test_lattice_and_sub(self):
        y = projection(2, 1)
        x2 = projection(2, 0)
        assert pwl_join(x2, y)((F(1, 3), F(2, 3))) == F(2, 3)
        assert pwl_meet(x2, y)((F(1, 3), F(2, 3))) == F(1, 3)
        assert pwl_sub(x2, y)((F(2, 3), F(1, 3))) == F(1, 3)
        assert (x2 | y)((H, 0)) == H and (x2 & y)((H, 0)) == 0 and (~x2)((H, 0)) == H

    def test_multiple(self):
        f = pwl_multiple(3, x)
        assert f(F(1, 6)) == H and f(F(1, 2)) == 1
        assert pwl_equal(pwl_multiple(0, x), constant(1, 0))
        assert pwl_equal(pwl_multiple(2, x), pwl_plus(x, x))
        with pytest.raises(ValueError):
            pwl_multiple(-1, x)

    def test_clipped_affine(self):
        f = clipped_affine(1, AffinePiece.from_fractions([F(3)], F(-1)))
        assert [f(v) for v in (0, F(1, 3), H, F(2, 3), 1)] == [0, 0, H, 1, 1]
        check_invariants(f)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            pwl_plus(x, projection(2, 0))
        with pytest.raises(DimensionError):
            x((H, H))

    def test_eval_outside_cube(self):
        with pytest.raises(ValueError):
            pwl_eval(x, (F(3, 2),))
        with pytest.raises(TypeError):
            pwl_eval(x, (0.5,))


class TestCompile:
    def test_examples(self):
        assert pwl_equal(compile_formula(parse("x0 -> x0")), constant(1, 1))
        assert pwl_equal(compile_formula(parse("x0 * x0")), pwl_times(x, x))
        assert pwl_equal(compile_ql(parse("Delta(1/2) x0")), pwl_delta(2, x))

    def test_eval_cross_check(self):
        for text in ("x0 -> x0", "x0 * x0", "Delta(1/2) x0"):
            phi = parse(text)
            f = compile_ql(phi)
            for v in (0, F(1, 3), H, F(5, 7), 1):
                assert f(v) == eval_ql(phi, (v,))

    def test_language_checks(self):
        with pytest.raises(LanguageError):
            compile_ql(DeltaN(2, Var(0)))
        with pytest.raises(LanguageError):
            compile_ratluk(Nabla(H, Var(0)))

    def test_dimension(self):
        assert compile_formula(parse("x2")).dim == 3
        assert compile_formula(parse("x0"), 3).dim == 3
        with pytest.raises(DimensionError):
            compile_formula(parse("x2"), 2)

    @given(formulas(2, "ql"), points(2))
    def test_matches_semantics_ql(self, phi, v):
        assert pwl_eval(compile_formula(phi, 2), v) == evaluate(phi, v)

    @given(formulas(3, "ratluk"), points(3))
    def test_matches_semantics_ratluk(self, phi, v):
        assert pwl_eval(compile_formula(phi, 3), v) == evaluate(phi, v)

    @given(formulas(2, "ql", 6))
    def test_invariants(self, phi):
        check_invariants(compile_formula(phi, 2))

    @given(formulas(3, "ratluk", 5))
    def test_invariants_3d(self, phi):
        check_invariants(compile_formula(phi, 3))

    @given(formulas(2, "ratluk", 10))
    def test_denominator_bound(self, phi):
        bound = prod(node.n for node in subformulas(phi) if isinstance(node, DeltaN))
        for c in compile_ratluk(phi, 2).cells:
            assert bound % c.piece.den == 0


class TestExtrema:
    def test_examples(self):
        one = constant(2, 1)
        assert pwl_min(one)[0] == 1
        low, where = pwl_min(compile_formula(parse("x0 -> x1")))
        assert (low, where) == (0, (1, 0))
        assert pwl_max(compile_formula(parse("x0 * x0"))) == (1, (1,))

    def test_witness_is_smallest_point(self):
        assert pwl_min(constant(2, H))[1] == (0, 0)

    def test_one_dimensional_sweep(self):
        rng = random.Random(17)
        for _ in range(60):
            phi = random_formula(rng, dim=1, depth=rng.randint(2, 7), leaf_prob=0.1,
                                 lang=rng.choice(["ql", "ratluk"]))
            f = compile_formula(phi, 1)
            assert (pwl_min(f)[0], pwl_max(f)[0]) == sweep_extrema(phi)

    @given(formulas(1, "ql", 8))
    def test_one_dimensional_sweep_hypothesis(self, phi):
        f = compile_formula(phi, 1)
        assert (pwl_min(f)[0], pwl_max(f)[0]) == sweep_extrema(phi)


class TestEquality:
    def test_examples(self):
        assert pwl_equal(x, x)
        assert not pwl_equal(x, pwl_delta(2, x))
        assert pwl_difference_witness(x, pwl_delta(2, x)) == (1,)

    def test_identities(self):
        x0, x1, x2 = Var(0), Var(1), Var(2)
        pairs = list(mv_identities(x0, x1, x2).values()) + list(dmv_identities(3, x0).values())
        pairs += module_identities(F(2, 3), F(1, 4), x0, x1).values()
        for lhs, rhs in pairs:
            assert pwl_equal(compile_formula(lhs, 3), compile_formula(rhs, 3))


class TestBudget:
    def test_default(self):
        assert get_max_cells() == DEFAULT_MAX_CELLS == 100_000

    def test_exceeded(self):
        phi = parse("(x0 * x1) \\/ (x1 * x2) \\/ (x0 + ~x2)")
        with cell_budget(2):
            with pytest.raises(CellBudgetExceeded):
                compile_formula(phi, 3)
        assert get_max_cells() == DEFAULT_MAX_CELLS
        compile_formula(phi, 3)

    def test_invalid(self):
        with pytest.raises(ValueError):
            with cell_budget(0):
                pass


class TestSerialization:
    @given(formulas(2, "ratluk", 6))
    def test_round_trip(self, phi):
        f = compile_formula(phi, 2)
        text = dumps(f)
        g = loads(text)
        assert dumps(g) == text
        assert pwl_equal(f, g)

    def test_format(self):
        data = to_dict(pwl_plus(x, x))
        assert data["dim"] == 1
        cell = data["cells"][0]
        assert set(cell) == {"h_rep", "piece"}
        assert set(cell["piece"]) == {"coeffs", "constant"}
        assert all(isinstance(v, str) for h in cell["h_rep"] for v in h["a"] + [h["b"]])
        assert json.loads(json.dumps(data)) == data

    def test_rejects_bad_cells(self):
        data = to_dict(x)
        data["cells"][0]["piece"]["constant"] = "2"
        with pytest.raises(ValueError):
            from_dict(data)
        data = to_dict(x)
        data["cells"][0]["h_rep"].append({"a": ["1"], "b": "0"})
        with pytest.raises(ValueError):
            from_dict(data)


def test_invariant_checker_catches_gaps():
    f = pwl_plus(x, x)
    broken = PwlFunc(1, f.cells[:1])
    with pytest.raises(InvariantError):
        check_invariants(broken)
    overlapping = PwlFunc(1, f.cells + f.cells[:1])
    with pytest.raises(InvariantError):
        check_invariants(overlapping)

"""Continuous piecewise-linear functions [0,1]^n -> [0,1] with rational
coefficients, i.e. elements of the free DMV-algebra on n generators.

A :class:`PwlFunc` is a list of full-dimensional convex cells covering the
cube, each carrying an affine piece.  Binary operations intersect the two
cell complexes pairwise and cut each intersection along the single
hyperplane where the result changes formula (``f + g = 1`` for ⊕ and ⊙,
``f = g`` for ∨ and ∧).  Cells are never merged, so equality of functions
is decided semantically (:func:`pwl_equal`), not structurally.
"""

from __future__ import annotations

import contextlib
import contextvars
import json
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .algebra import UnitRational, format_rational, parse_rational
from .polytope import (
    Point,
    Polytope,
    point_from_fractions,
    point_to_fractions,
    row_from_fractions,
)
from .syntax import DeltaN, Implies, Nabla, Neg, Node, Var, check_ql, check_ratluk, dimension

__all__ = [
    "AffinePiece",
    "Cell",
    "PwlFunc",
    "CellBudgetExceeded",
    "DimensionError",
    "InvariantError",
    "DEFAULT_MAX_CELLS",
    "cell_budget",
    "get_max_cells",
    "constant",
    "projection",
    "clipped_affine",
    "pwl_neg",
    "pwl_plus",
    "pwl_times",
    "pwl_sub",
    "pwl_join",
    "pwl_meet",
    "pwl_delta",
    "pwl_scalar",
    "pwl_multiple",
    "pwl_abs_diff",
    "compile_formula",
    "compile_ql",
    "compile_ratluk",
    "pwl_eval",
    "pwl_min",
    "pwl_max",
    "pwl_equal",
    "pwl_difference_witness",
    "check_invariants",
    "to_dict",
    "from_dict",
    "dumps",
    "loads",
]

DEFAULT_MAX_CELLS = 100_000
_max_cells: contextvars.ContextVar[int] = contextvars.ContextVar("max_cells", default=DEFAULT_MAX_CELLS)


class CellBudgetExceeded(RuntimeError):
    """An operation would produce more cells than the active budget."""


class DimensionError(ValueError):
    pass


class InvariantError(AssertionError):
    pass


@contextlib.contextmanager
def cell_budget(max_cells: int):
    """Temporarily change the cell budget for operations in this context."""
    if max_cells < 1:
        raise ValueError("cell budget must be positive")
    token = _max_cells.set(max_cells)
    try:
        yield
    finally:
        _max_cells.reset(token)


def get_max_cells() -> int:
    return _max_cells.get()


# -- affine pieces --------------------------------------------------------


@dataclass(frozen=True, slots=True)
class AffinePiece:
    """``x ↦ (num[:n]·x + num[n]) / den`` with integer data, ``den > 0``."""

    num: tuple[int, ...]
    den: int

    @staticmethod
    def make(num: Sequence[int], den: int) -> AffinePiece:
        if den == 0:
            raise ZeroDivisionError("affine piece with zero denominator")
        if den < 0:
            num = [-v for v in num]
            den = -den
        g = den
        for v in num:
            g = gcd(g, v)
        if g > 1:
            return AffinePiece(tuple(v // g for v in num), den // g)
        return AffinePiece(tuple(num), den)

    @staticmethod
    def from_fractions(coeffs: Sequence[Fraction], const: Fraction) -> AffinePiece:
        vals = [Fraction(c) for c in coeffs] + [Fraction(const)]
        d = 1
        for v in vals:
            d = lcm(d, v.denominator)
        return AffinePiece.make([int(v * d) for v in vals], d)

    @staticmethod
    def const(n: int, c: Fraction) -> AffinePiece:
        c = Fraction(c)
        return AffinePiece.make([0] * n + [c.numerator], c.denominator)

    @property
    def n(self) -> int:
        return len(self.num) - 1

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(v, self.den) for v in self.num[:-1])

    @property
    def constant(self) -> Fraction:
        return Fraction(self.num[-1], self.den)

    @property
    def is_constant(self) -> bool:
        return not any(self.num[:-1])

    def has_integer_coefficients(self) -> bool:
        return self.den == 1

    def at(self, pt: Point) -> Fraction:
        """Value at a homogeneous point."""
        n = self.n
        s = self.num[n] * pt[n]
        for i in range(n):
            s += self.num[i] * pt[i]
        return Fraction(s, self.den * pt[n])

    def __call__(self, x: Sequence[Fraction]) -> Fraction:
        s = Fraction(self.num[-1])
        for a, v in zip(self.num, x):
            s += a * Fraction(v)
        return s / self.den

    def __add__(self, other: AffinePiece) -> AffinePiece:
        d1, d2 = self.den, other.den
        return AffinePiece.make([a * d2 + b * d1 for a, b in zip(self.num, other.num)], d1 * d2)

    def __sub__(self, other: AffinePiece) -> AffinePiece:
        d1, d2 = self.den, other.den
        return AffinePiece.make([a * d2 - b * d1 for a, b in zip(self.num, other.num)], d1 * d2)

    def complement(self) -> AffinePiece:
        """``1 - f``."""
        num = [-v for v in self.num]
        num[-1] += self.den
        return AffinePiece.make(num, self.den)

    def scale(self, r: Fraction) -> AffinePiece:
        r = Fraction(r)
        return AffinePiece.make([v * r.numerator for v in self.num], self.den * r.denominator)

    def shift(self, c: Fraction) -> AffinePiece:
        c = Fraction(c)
        num = [v * c.denominator for v in self.num]
        num[-1] += c.numerator * self.den
        return AffinePiece.make(num, self.den * c.denominator)

    def le_row(self, c: Fraction = Fraction(0)) -> tuple[int, ...]:
        """Integer constraint row for ``f(x) <= c``."""
        c = Fraction(c)
        n = self.n
        a = [v * c.denominator for v in self.num[:n]]
        b = c.numerator * self.den - self.num[n] * c.denominator
        return tuple(a) + (b,)

    def compose(self, inner: Sequence[AffinePiece]) -> AffinePiece:
        """``f(g_1(x), ..., g_n(x))`` for affine ``g_i`` in a common dimension m."""
        if len(inner) != self.n:
            raise DimensionError("wrong number of inner pieces")
        m = inner[0].n if inner else 0
        acc = AffinePiece.const(m, Fraction(self.num[-1], self.den))
        for a, g in zip(self.num, inner):
            if a:
                acc = acc + g.scale(Fraction(a, self.den))
        return acc

    def __str__(self):
        terms = [f"{format_rational(c)}*x{i}" for i, c in enumerate(self.coeffs) if c]
        const = self.constant
        if const or not terms:
            terms.append(format_rational(const))
        return " + ".join(terms)


_ZERO_CACHE: dict[int, AffinePiece] = {}


def _zero(n: int) -> AffinePiece:
    p = _ZERO_CACHE.get(n)
    if p is None:
        p = _ZERO_CACHE[n] = AffinePiece.const(n, Fraction(0))
    return p


def _one(n: int) -> AffinePiece:
    return AffinePiece.const(n, Fraction(1))


# -- cells and functions --------------------------------------------------


@dataclass(frozen=True, slots=True)
class Cell:
    polytope: Polytope
    piece: AffinePiece

    @property
    def h_rep(self):
        return self.polytope.h_rep()

    @property
    def v_rep(self):
        return self.polytope.vertices


class PwlFunc:
    """A continuous piecewise-linear function on [0,1]^dim.

    Immutable by convention; every operation returns a new function.
    """

    __slots__ = ("dim", "cells")

    def __init__(self, dim: int, cells: Sequence[Cell]):
        self.dim = dim
        self.cells = tuple(cells)

    def __call__(self, *x) -> UnitRational:
        if len(x) == 1 and isinstance(x[0], (tuple, list)):
            x = x[0]
        return pwl_eval(self, x)

    def __len__(self):
        return len(self.cells)

    def __repr__(self):
        return f"PwlFunc(dim={self.dim}, cells={len(self.cells)})"

    def pieces(self) -> list[AffinePiece]:
        return [c.piece for c in self.cells]

    def has_integer_coefficients(self) -> bool:
        return all(c.piece.has_integer_coefficients() for c in self.cells)

    def vertex_points(self) -> list[Point]:
        seen = {}
        for c in self.cells:
            for p in c.polytope.points:
                seen.setdefault(p, None)
        return list(seen)

    # operator sugar for the algebra
    def __invert__(self):
        return pwl_neg(self)

    def __or__(self, other):
        return pwl_join(self, other)

    def __and__(self, other):
        return pwl_meet(self, other)


def _check_budget(count: int) -> None:
    limit = _max_cells.get()
    if count > limit:
        raise CellBudgetExceeded(f"more than {limit} cells")


def _same_complex(f: PwlFunc, g: PwlFunc) -> bool:
    if len(f.cells) != len(g.cells):
        return False
    return all(a.polytope is b.polytope for a, b in zip(f.cells, g.cells))


def _finish(dim: int, cells: list[Cell]) -> PwlFunc:
    # collapse to one cell when every piece agrees
    first = cells[0].piece
    if len(cells) > 1 and all(c.piece == first for c in cells):
        return PwlFunc(dim, [Cell(Polytope.cube(dim), first)])
    return PwlFunc(dim, cells)


def constant(n: int, c) -> PwlFunc:
    c = UnitRational.of(c)
    return PwlFunc(n, [Cell(Polytope.cube(n), AffinePiece.const(n, c))])


def projection(n: int, i: int) -> PwlFunc:
    if not 0 <= i < n:
        raise IndexError(f"projection index {i} out of range for dimension {n}")
    num = [0] * (n + 1)
    num[i] = 1
    return PwlFunc(n, [Cell(Polytope.cube(n), AffinePiece(tuple(num), 1))])


def _map_pieces(f: PwlFunc, fn) -> PwlFunc:
    return PwlFunc(f.dim, [Cell(c.polytope, fn(c.piece)) for c in f.cells])


def pwl_neg(f: PwlFunc) -> PwlFunc:
    """Pointwise ``1 - f``."""
    return _map_pieces(f, AffinePiece.complement)


def pwl_delta(n: int, f: PwlFunc) -> PwlFunc:
    """Pointwise ``f / n``."""
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"delta index must be an integer >= 1, got {n!r}")
    r = Fraction(1, n)
    return _map_pieces(f, lambda p: p.scale(r))


def pwl_scalar(r, f: PwlFunc) -> PwlFunc:
    """Pointwise ``r·f`` for ``r`` in [0,1] ∩ Q."""
    r = UnitRational.of(r)
    return _map_pieces(f, lambda p: p.scale(r))


def _cut(poly: Polytope, h: AffinePiece, c: Fraction, low: AffinePiece, high: AffinePiece,
         out: list[Cell]) -> None:
    """Emit ``low`` where ``h <= c`` and ``high`` where ``h >= c``."""
    if low == high:
        out.append(Cell(poly, low))
        return
    row = h.le_row(c)
    below, above = poly.split(row) if any(row[:-1]) else _const_side(row, poly)
    if below is not None:
        out.append(Cell(below, low))
    if above is not None:
        out.append(Cell(above, high))


def _const_side(row, poly):
    # h is constant on the cube: 0·x <= b
    return (poly, None) if row[-1] >= 0 else (None, poly)


def _binary(f: PwlFunc, g: PwlFunc, rule) -> PwlFunc:
    if f.dim != g.dim:
        raise DimensionError(f"dimension mismatch: {f.dim} vs {g.dim}")
    dim = f.dim
    out: list[Cell] = []
    if _same_complex(f, g):
        for cf, cg in zip(f.cells, g.cells):
            rule(cf.polytope, cf.piece, cg.piece, out)
            _check_budget(len(out))
        return _finish(dim, out)
    for cf in f.cells:
        pf = cf.polytope
        flo, fhi = pf.bbox
        for cg in g.cells:
            pg = cg.polytope
            glo, ghi = pg.bbox
            if any(max(flo[i], glo[i]) >= min(fhi[i], ghi[i]) for i in range(dim)):
                continue
            if len(f.cells) == 1:
                inter = pg
            elif len(g.cells) == 1:
                inter = pf
            else:
                inter = Polytope.from_rows(dim, pf.rows + pg.rows)
                if not inter.is_full_dimensional:
                    continue
            rule(inter, cf.piece, cg.piece, out)
            _check_budget(len(out))
    return _finish(dim, out)


def _plus_rule(poly, p, q, out):
    s = p + q
    _cut(poly, s, Fraction(1), s, _one(s.n), out)


def _times_rule(poly, p, q, out):
    s = (p + q).shift(-1)
    _cut(poly, s, Fraction(0), _zero(s.n), s, out)


def _join_rule(poly, p, q, out):
    _cut(poly, p - q, Fraction(0), q, p, out)


def _meet_rule(poly, p, q, out):
    _cut(poly, p - q, Fraction(0), p, q, out)


def pwl_plus(f: PwlFunc, g: PwlFunc) -> PwlFunc:
    """Pointwise ``min(f + g, 1)``."""
    return _binary(f, g, _plus_rule)


def pwl_times(f: PwlFunc, g: PwlFunc) -> PwlFunc:
    """Pointwise ``max(f + g - 1, 0)``."""
    return _binary(f, g, _times_rule)


def pwl_sub(f: PwlFunc, g: PwlFunc) -> PwlFunc:
    """Truncated difference ``f ⊖ g = f ⊙ g*``."""
    return pwl_times(f, pwl_neg(g))


def pwl_join(f: PwlFunc, g: PwlFunc) -> PwlFunc:
    return _binary(f, g, _join_rule)


def pwl_meet(f: PwlFunc, g: PwlFunc) -> PwlFunc:
    return _binary(f, g, _meet_rule)


def pwl_multiple(k: int, f: PwlFunc) -> PwlFunc:
    """k-fold truncated sum, computed in one pass as ``min(k·f, 1)``."""
    if k < 0:
        raise ValueError("multiplicity must be non-negative")
    if k == 0:
        return constant(f.dim, 0)
    out: list[Cell] = []
    for c in f.cells:
        s = c.piece.scale(k)
        _cut(c.polytope, s, Fraction(1), s, _one(f.dim), out)
        _check_budget(len(out))
    return _finish(f.dim, out)


def pwl_abs_diff(f: PwlFunc, g: PwlFunc) -> PwlFunc:
    """``(f ⊖ g) ⊕ (g ⊖ f)``, i.e. ``|f - g|``."""
    return pwl_plus(pwl_sub(f, g), pwl_sub(g, f))


def clipped_affine(n: int, piece: AffinePiece) -> PwlFunc:
    """``max(0, min(1, piece))`` on [0,1]^n."""
    if piece.n != n:
        raise DimensionError("piece dimension mismatch")
    low_part: list[Cell] = []
    _cut(Polytope.cube(n), piece, Fraction(0), _zero(n), piece, low_part)
    out: list[Cell] = []
    for c in low_part:
        if c.piece is piece:
            _cut(c.polytope, piece, Fraction(1), piece, _one(n), out)
        else:
            out.append(c)
    return _finish(n, out)


# -- compilation of formulas ----------------------------------------------


def compile_formula(phi: Node, n: int | None = None) -> PwlFunc:
    """The term function of ``phi`` on [0,1]^n (n defaults to its dimension)."""
    need = dimension(phi)
    if n is None:
        n = max(need, 1)
    elif n < need:
        raise DimensionError(f"formula mentions x{need - 1} but n = {n}")
    memo: dict[Node, PwlFunc] = {}

    def go(node):
        hit = memo.get(node)
        if hit is not None:
            return hit
        if isinstance(node, Var):
            out = projection(n, node.index)
        elif isinstance(node, Neg):
            out = pwl_neg(go(node.child))
        elif isinstance(node, Implies):
            out = pwl_plus(pwl_neg(go(node.left)), go(node.right))
        elif isinstance(node, Nabla):
            out = pwl_neg(pwl_scalar(node.r, pwl_neg(go(node.child))))
        elif isinstance(node, DeltaN):
            out = pwl_delta(node.n, go(node.child))
        else:
            raise TypeError(f"not a formula node: {node!r}")
        memo[node] = out
        return out

    return go(phi)


def compile_ql(phi: Node, n: int | None = None) -> PwlFunc:
    return compile_formula(check_ql(phi), n)


def compile_ratluk(phi: Node, n: int | None = None) -> PwlFunc:
    return compile_formula(check_ratluk(phi), n)


# -- evaluation and extrema -----------------------------------------------


def pwl_eval(f: PwlFunc, x: Sequence) -> UnitRational:
    if len(x) != f.dim:
        raise DimensionError(f"point has {len(x)} coordinates, function has {f.dim}")
    xs = [v if isinstance(v, Fraction) else UnitRational.of(v) for v in x]
    if any(v < 0 or v > 1 for v in xs):
        raise ValueError("point lies outside the unit cube")
    pt = point_from_fractions(xs)
    for c in f.cells:
        if c.polytope.contains_point(pt):
            return UnitRational(c.piece.at(pt))
    raise InvariantError("no cell contains the point; cells do not cover the cube")


def _extremum(f: PwlFunc, better) -> tuple[UnitRational, tuple[UnitRational, ...]]:
    best = None
    best_pt = None
    for c in f.cells:
        for pt in c.polytope.points:
            v = c.piece.at(pt)
            if best is None or better(v, best) or (v == best and pt < best_pt):
                best, best_pt = v, pt
    return UnitRational(best), tuple(UnitRational(v) for v in point_to_fractions(best_pt))


def pwl_min(f: PwlFunc) -> tuple[UnitRational, tuple[UnitRational, ...]]:
    """Exact global minimum and a rational vertex attaining it."""
    return _extremum(f, lambda a, b: a < b)


def pwl_max(f: PwlFunc) -> tuple[UnitRational, tuple[UnitRational, ...]]:
    """Exact global maximum and a rational vertex attaining it."""
    return _extremum(f, lambda a, b: a > b)


def pwl_difference_witness(f: PwlFunc, g: PwlFunc):
    """A point where ``f`` and ``g`` differ (largest gap), or None if equal."""
    if f.dim != g.dim:
        raise DimensionError(f"dimension mismatch: {f.dim} vs {g.dim}")
    top, where = pwl_max(pwl_abs_diff(f, g))
    return None if top == 0 else where


def pwl_equal(f: PwlFunc, g: PwlFunc) -> bool:
    """True iff ``f(x) = g(x)`` on the whole cube."""
    return pwl_difference_witness(f, g) is None


# -- invariants -----------------------------------------------------------


def check_invariants(f: PwlFunc, *, check_cover: bool = True) -> None:
    """Raise :class:`InvariantError` unless ``f`` is a well-formed function.

    Checks cell shape and V/H agreement, range, coverage by volume,
    disjoint interiors and continuity across shared facets.
    """
    n = f.dim
    cube = Polytope.cube(n)
    for k, c in enumerate(f.cells):
        poly = c.polytope
        if not poly.is_full_dimensional:
            raise InvariantError(f"cell {k} is not full-dimensional")
        again = Polytope.from_rows(n, poly.rows)
        if set(again.points) != set(poly.points):
            raise InvariantError(f"cell {k}: cached vertices disagree with H-rep")
        for pt in poly.points:
            if not cube.contains_point(pt):
                raise InvariantError(f"cell {k} leaves the unit cube")
            v = c.piece.at(pt)
            if v < 0 or v > 1:
                raise InvariantError(f"cell {k}: value {v} outside [0,1]")
    if not check_cover:
        return
    vol = sum((c.polytope.volume() for c in f.cells), Fraction(0))
    if vol != 1:
        raise InvariantError(f"cells cover volume {vol}, expected 1")
    for i, a in enumerate(f.cells):
        for b in f.cells[i + 1:]:
            common = a.polytope.intersect(b.polytope)
            if common.is_empty:
                continue
            if common.affine_dim == n:
                raise InvariantError("two cells overlap in a full-dimensional region")
            for pt in common.points:
                if a.piece.at(pt) != b.piece.at(pt):
                    raise InvariantError("pieces disagree on a shared boundary point")


# -- serialization --------------------------------------------------------


def _rat(x) -> str:
    return format_rational(Fraction(x))


def to_dict(f: PwlFunc) -> dict:
    cells = []
    for c in f.cells:
        h = [{"a": [_rat(v) for v in a], "b": _rat(b)} for a, b in c.polytope.h_rep()]
        piece = {"coeffs": [_rat(v) for v in c.piece.coeffs], "constant": _rat(c.piece.constant)}
        cells.append({"h_rep": h, "piece": piece})
    return {"dim": f.dim, "cells": cells}


def from_dict(data: dict) -> PwlFunc:
    n = int(data["dim"])
    cells = []
    for cd in data["cells"]:
        rows = [row_from_fractions([parse_rational(a, unit=False) for a in h["a"]],
                                   parse_rational(h["b"], unit=False))
                for h in cd["h_rep"]]
        poly = Polytope.from_rows(n, rows)
        if not poly.is_full_dimensional:
            raise ValueError("serialized cell is not a full-dimensional polytope")
        pd = cd["piece"]
        coeffs = [parse_rational(v, unit=False) for v in pd["coeffs"]]
        if len(coeffs) != n:
            raise ValueError("piece has the wrong number of coefficients")
        piece = AffinePiece.from_fractions(coeffs, parse_rational(pd["constant"], unit=False))
        cells.append(Cell(poly, piece))
    out = PwlFunc(n, cells)
    try:
        check_invariants(out, check_cover=False)
    except InvariantError as exc:
        raise ValueError(f"invalid serialized function: {exc}") from None
    return out


def dumps(f: PwlFunc, **kwargs) -> str:
    return json.dumps(to_dict(f), **kwargs)


def loads(text: str) -> PwlFunc:
    return from_dict(json.loads(text))

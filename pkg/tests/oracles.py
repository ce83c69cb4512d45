"""Independent reference computations used by the tests.

Nothing here goes through the cell-complex engine: one-variable formulas are
evaluated as sorted knot lists, grids are enumerated directly.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from ratluk.syntax import DeltaN, Implies, Nabla, Neg, Var

Knots = list[tuple[Fraction, Fraction]]


def _value(knots: Knots, x: Fraction) -> Fraction:
    for (x0, y0), (x1, y1) in zip(knots, knots[1:]):
        if x0 <= x <= x1:
            return y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    raise ValueError(x)


def _unary(knots: Knots, fn) -> Knots:
    return [(x, fn(y)) for x, y in knots]


def _binary(f: Knots, g: Knots, fn, kink) -> Knots:
    """Combine two knot lists; ``kink(a, b)`` is the affine expression whose
    sign change marks a breakpoint of ``fn``."""
    xs = sorted({x for x, _ in f} | {x for x, _ in g})
    pts = []
    for x0, x1 in zip(xs, xs[1:]):
        a0, b0 = _value(f, x0), _value(g, x0)
        a1, b1 = _value(f, x1), _value(g, x1)
        k0, k1 = kink(a0, b0), kink(a1, b1)
        pts.append(x0)
        if (k0 < 0 < k1) or (k1 < 0 < k0):
            pts.append(x0 + (x1 - x0) * k0 / (k0 - k1))
    pts.append(xs[-1])
    return [(x, fn(_value(f, x), _value(g, x))) for x in pts]


def knots_of(phi) -> Knots:
    """Exact graph of a one-variable formula as breakpoints with values."""
    if isinstance(phi, Var):
        if phi.index != 0:
            raise ValueError("one-variable formulas only")
        return [(Fraction(0), Fraction(0)), (Fraction(1), Fraction(1))]
    if isinstance(phi, Neg):
        return _unary(knots_of(phi.child), lambda y: 1 - y)
    if isinstance(phi, DeltaN):
        return _unary(knots_of(phi.child), lambda y: y / phi.n)
    if isinstance(phi, Nabla):
        r = Fraction(phi.r)
        return _unary(knots_of(phi.child), lambda y: 1 - r * (1 - y))
    if isinstance(phi, Implies):
        return _binary(knots_of(phi.left), knots_of(phi.right),
                       lambda a, b: min(1 - a + b, Fraction(1)),
                       lambda a, b: b - a)
    raise TypeError(phi)


def sweep_extrema(phi) -> tuple[Fraction, Fraction]:
    """(min, max) of a one-variable formula over [0,1] via its knots and
    the midpoints between them."""
    knots = knots_of(phi)
    vals = [y for _, y in knots]
    for (x0, _), (x1, _) in zip(knots, knots[1:]):
        vals.append(_value(knots, (x0 + x1) / 2))
    return min(vals), max(vals)


def grid(n: int, den: int):
    """All points of [0,1]^n with coordinates k/den."""
    axis = [Fraction(k, den) for k in range(den + 1)]
    return product(axis, repeat=n)

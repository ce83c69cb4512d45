"""Exact evaluation of formulas in the standard model [0,1] ∩ Q."""

from __future__ import annotations

import random
from collections.abc import Sequence
from fractions import Fraction

from . import algebra as alg
from .algebra import UnitRational
from .syntax import DeltaN, Implies, Nabla, Neg, Node, Var, check_ql, check_ratluk

__all__ = [
    "Valuation",
    "ValuationError",
    "valuation",
    "evaluate",
    "eval_ql",
    "eval_ratluk",
    "random_rational_point",
]

Valuation = tuple[UnitRational, ...]


class ValuationError(ValueError):
    pass


def valuation(values: Sequence) -> Valuation:
    """Build a valuation from ints, Fractions or ``"p/q"`` strings."""
    return tuple(UnitRational.of(v) for v in values)


def evaluate(phi: Node, point: Sequence[Fraction]) -> UnitRational:
    """Value of ``phi`` at ``point``; handles ∇_r and δ_n alike.

    e(φ → ψ) = e(φ)* ⊕ e(ψ), e(¬φ) = e(φ)*, e(∇_r φ) = (r·e(φ)*)*,
    e(δ_n φ) = e(φ)/n.
    """
    memo: dict[Node, UnitRational] = {}

    def go(node):
        hit = memo.get(node)
        if hit is not None:
            return hit
        if isinstance(node, Var):
            if node.index >= len(point):
                raise ValuationError(
                    f"valuation has {len(point)} coordinates but x{node.index} occurs"
                )
            out = UnitRational.of(point[node.index])
        elif isinstance(node, Neg):
            out = alg.mv_neg(go(node.child))
        elif isinstance(node, Implies):
            out = alg.mv_add(alg.mv_neg(go(node.left)), go(node.right))
        elif isinstance(node, Nabla):
            out = alg.mv_neg(alg.scalar(node.r, alg.mv_neg(go(node.child))))
        elif isinstance(node, DeltaN):
            out = alg.delta(node.n, go(node.child))
        else:
            raise TypeError(f"not a formula node: {node!r}")
        memo[node] = out
        return out

    return go(phi)


def eval_ql(phi: Node, point: Sequence[Fraction]) -> UnitRational:
    return evaluate(check_ql(phi), point)


def eval_ratluk(phi: Node, point: Sequence[Fraction]) -> UnitRational:
    return evaluate(check_ratluk(phi), point)


def random_rational_point(n: int, max_den: int, seed=None) -> Valuation:
    """A seeded point of [0,1]^n whose coordinates have denominator <= max_den.

    ``seed`` may be an int or a :class:`random.Random` instance.
    """
    if max_den < 1:
        raise ValueError("max_den must be >= 1")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    coords = []
    for _ in range(n):
        q = rng.randint(1, max_den)
        p = rng.randint(0, q)
        coords.append(UnitRational(p, q))
    return tuple(coords)

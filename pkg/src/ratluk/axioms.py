"""Axiom schemas of both logics, and the defining identities of MV- and
DMV-algebras as pairs of formulas.

Each schema is a plain function taking subformulas (and scalars or delta
indices) and returning the instance.
"""

from __future__ import annotations

from fractions import Fraction

from . import algebra as alg
from .syntax import (
    Bottom,
    DeltaN,
    Iff,
    Implies,
    Join,
    Nabla,
    Neg,
    Node,
    Plus,
    Times,
    multiple,
)

__all__ = [
    "L1", "L2", "L3", "L4",
    "Q1", "Q2", "Q3", "Q4",
    "D1", "D2", "D3",
    "LUK_AXIOMS", "QL_AXIOMS", "RATLUK_AXIOMS",
    "mv_identities", "dmv_identities", "module_identities",
]


def L1(phi: Node, psi: Node) -> Node:
    return Implies(phi, Implies(psi, phi))


def L2(phi: Node, psi: Node, chi: Node) -> Node:
    return Implies(Implies(phi, psi), Implies(Implies(psi, chi), Implies(phi, chi)))


def L3(phi: Node, psi: Node) -> Node:
    return Implies(Join(phi, psi), Join(psi, phi))


def L4(phi: Node, psi: Node) -> Node:
    return Implies(Implies(Neg(psi), Neg(phi)), Implies(phi, psi))


def Q1(r, phi: Node, psi: Node) -> Node:
    return Iff(Nabla(r, Implies(phi, psi)), Implies(Nabla(r, phi), Nabla(r, psi)))


def Q2(r, q, phi: Node) -> Node:
    # subscript r ⊙ q* is computed before the node is built
    sub = alg.mv_mul_trunc(alg.UnitRational.of(r), alg.mv_neg(alg.UnitRational.of(q)))
    return Iff(Nabla(sub, phi), Implies(Nabla(q, phi), Nabla(r, phi)))


def Q3(r, q, phi: Node) -> Node:
    prod = alg.UnitRational(Fraction(alg.UnitRational.of(r)) * alg.UnitRational.of(q))
    return Iff(Nabla(r, Nabla(q, phi)), Nabla(prod, phi))


def Q4(phi: Node) -> Node:
    return Iff(Nabla(1, phi), phi)


def D1(n: int, phi: Node) -> Node:
    return Implies(multiple(n, DeltaN(n, phi)), phi)


def D2(n: int, phi: Node) -> Node:
    return Implies(phi, multiple(n, DeltaN(n, phi)))


def D3(n: int, phi: Node) -> Node:
    d = DeltaN(n, phi)
    return Plus(Neg(d), Neg(multiple(n - 1, d)))


LUK_AXIOMS = {"L1": L1, "L2": L2, "L3": L3, "L4": L4}
QL_AXIOMS = {"Q1": Q1, "Q2": Q2, "Q3": Q3, "Q4": Q4}
RATLUK_AXIOMS = {"D1": D1, "D2": D2, "D3": D3}


def mv_identities(x: Node, y: Node, z: Node) -> dict[str, tuple[Node, Node]]:
    """MV1-MV4 as (lhs, rhs) formula pairs; ⊕ is ``Plus``, 0 is ``Bottom``."""
    zero = Bottom(x)
    return {
        "MV1-comm": (Plus(x, y), Plus(y, x)),
        "MV1-assoc": (Plus(x, Plus(y, z)), Plus(Plus(x, y), z)),
        "MV1-unit": (Plus(x, zero), x),
        "MV2": (Neg(Neg(x)), x),
        "MV3": (Plus(Neg(Plus(Neg(x), y)), y), Plus(Neg(Plus(Neg(y), x)), x)),
        "MV4": (Plus(Neg(zero), x), Neg(zero)),
    }


def dmv_identities(n: int, x: Node) -> dict[str, tuple[Node, Node]]:
    """(DMV1) n·δ_n x = x and (DMV2) δ_n x ⊙ (n-1)·δ_n x = 0."""
    d = DeltaN(n, x)
    return {
        "DMV1": (multiple(n, d), x),
        "DMV2": (Times(d, multiple(n - 1, d)), Bottom(x)),
    }


def _act(r, phi: Node) -> Node:
    """The scalar action r·φ as the ∇-language term Δ_r φ."""
    return Neg(Nabla(r, Neg(phi)))


def module_identities(r, q, x: Node, y: Node) -> dict[str, tuple[Node, Node]]:
    """(DMV1')-(DMV4'): the [0,1]∩Q module identities, via Δ_r = r·(-)."""
    r = alg.UnitRational.of(r)
    q = alg.UnitRational.of(q)
    r_minus_q = alg.mv_mul_trunc(r, alg.mv_neg(q))
    return {
        "DMV1'": (_act(r, Times(x, Neg(y))), Times(_act(r, x), Neg(_act(r, y)))),
        "DMV2'": (_act(r_minus_q, x), Times(_act(r, x), Neg(_act(q, x)))),
        "DMV3'": (_act(r, _act(q, x)), _act(alg.UnitRational(Fraction(r) * q), x)),
        "DMV4'": (_act(1, x), x),
    }

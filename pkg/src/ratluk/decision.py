"""Exact tautology, satisfiability, consequence and equivalence checks.

Formulas are compiled to piecewise-linear functions; the questions become
statements about exact extrema, which are attained at rational vertices.
Every negative (resp. positive) answer comes with a rational witness.

A continuous function with rational breakpoints has the same infimum over
the rational points of the cube as over the whole cube, and the minimum is
attained at a rational vertex, so validity over [0,1] ∩ Q and over [0,1]
coincide.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

from .algebra import UnitRational, format_rational
from .duality import vanishing_witness, zeroset
from .pwl import PwlFunc, compile_formula, pwl_abs_diff, pwl_max, pwl_meet, pwl_min, pwl_neg
from .syntax import Node, dimension, language_of

__all__ = [
    "Verdict",
    "is_tautology",
    "is_satisfiable",
    "equivalent",
    "entails",
]


@dataclass(frozen=True)
class Verdict:
    """``answer`` plus the point certifying it, when one is meaningful.

    For tautology and equivalence the witness is a countermodel (present
    only when the answer is False); for satisfiability it is a model
    (present only when True).  ``value`` is the extremum that decided it.
    """

    answer: bool
    witness: tuple[UnitRational, ...] | None = None
    value: UnitRational | None = None

    def __bool__(self):
        return self.answer

    def witness_text(self) -> str:
        if self.witness is None:
            return ""
        return ", ".join(f"x{i}={format_rational(v)}" for i, v in enumerate(self.witness))

    def to_dict(self) -> dict:
        return {
            "answer": self.answer,
            "witness": None if self.witness is None else [format_rational(v) for v in self.witness],
            "value": None if self.value is None else format_rational(self.value),
        }


def _compile(phi: Node, n: int | None) -> PwlFunc:
    return compile_formula(phi, n if n is not None else max(dimension(phi), 1))


def is_tautology(phi: Node, n: int | None = None) -> Verdict:
    """True iff ``phi`` takes value 1 at every point of the cube."""
    low, where = pwl_min(_compile(phi, n))
    if low == 1:
        return Verdict(True, None, low)
    return Verdict(False, where, low)


def is_satisfiable(phi: Node, n: int | None = None) -> Verdict:
    """True iff ``phi`` takes value 1 somewhere."""
    high, where = pwl_max(_compile(phi, n))
    if high == 1:
        return Verdict(True, where, high)
    return Verdict(False, None, high)


def equivalent(phi: Node, psi: Node) -> Verdict:
    """Semantic equality of the two term functions (Lindenbaum-Tarski ≡).

    The witness is a point of maximal disagreement.
    """
    la, lb = language_of(phi), language_of(psi)
    if "luk" not in (la, lb) and la != lb:
        raise ValueError(f"formulas belong to different languages ({la} vs {lb})")
    n = max(dimension(phi), dimension(psi), 1)
    gap, where = pwl_max(pwl_abs_diff(compile_formula(phi, n), compile_formula(psi, n)))
    if gap == 0:
        return Verdict(True, None, gap)
    return Verdict(False, where, gap)


def entails(premises: Iterable[Node], phi: Node) -> Verdict:
    """Semantic consequence: every point giving all premises value 1 gives
    ``phi`` value 1.

    Decided as an ideal membership: ``¬phi`` must vanish on the zeroset of
    ``¬(premise_1 ∧ ... ∧ premise_k)``.  The witness is a model of the
    premises where ``phi < 1``.
    """
    premises = list(premises)
    n = max([dimension(phi)] + [dimension(p) for p in premises] + [1])
    target = pwl_neg(compile_formula(phi, n))
    if not premises:
        return is_tautology(phi, n)
    conj = compile_formula(premises[0], n)
    for p in premises[1:]:
        conj = pwl_meet(conj, compile_formula(p, n))
    w = vanishing_witness(target, zeroset(pwl_neg(conj)))
    if w is None:
        return Verdict(True)
    return Verdict(False, w)

"""Exact arithmetic on [0,1] ∩ Q: the standard MV/DMV operations.

Every operation returns a :class:`UnitRational`, a :class:`fractions.Fraction`
that is guaranteed to lie in the unit interval.  Nothing here touches floats.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

__all__ = [
    "UnitRational",
    "ZERO",
    "ONE",
    "parse_rational",
    "format_rational",
    "mv_add",
    "mv_neg",
    "mv_mul_trunc",
    "mv_sub",
    "mv_join",
    "mv_meet",
    "mv_multiple",
    "delta",
    "scalar",
]


class UnitRational(Fraction):
    """A rational number in [0, 1], always in lowest terms."""

    __slots__ = ()

    def __new__(cls, numerator=0, denominator=None):
        if isinstance(numerator, float) or isinstance(denominator, float):
            raise TypeError("UnitRational does not accept floats")
        self = super().__new__(cls, numerator, denominator)
        if self < 0 or self > 1:
            raise ValueError(f"{Fraction(self)} is not in [0, 1]")
        return self

    @classmethod
    def of(cls, value) -> UnitRational:
        """Coerce ints, Fractions and ``"p/q"`` strings."""
        if isinstance(value, UnitRational):
            return value
        if isinstance(value, str):
            return parse_rational(value)
        if isinstance(value, Rational):
            return cls(value)
        raise TypeError(f"cannot build a UnitRational from {value!r}")

    @property
    def num(self) -> int:
        return self.numerator

    @property
    def den(self) -> int:
        return self.denominator

    def __repr__(self):
        return f"UnitRational({format_rational(self)!r})"

    def __str__(self):
        return format_rational(self)


ZERO = UnitRational(0)
ONE = UnitRational(1)

_RATIONAL_RE = re.compile(r"\s*(-?\d+)\s*(?:/\s*(-?\d+)\s*)?\Z")


def parse_rational(text: str, *, unit: bool = True) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``.

    With ``unit=True`` (the default) the value must lie in [0, 1] and a
    :class:`UnitRational` is returned; otherwise any rational is accepted.
    """
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ValueError(f"malformed rational literal {text!r}")
    p = int(m.group(1))
    q = int(m.group(2)) if m.group(2) is not None else 1
    if q == 0:
        raise ValueError(f"zero denominator in {text!r}")
    if unit:
        return UnitRational(p, q)
    return Fraction(p, q)


def format_rational(x: Fraction | int) -> str:
    """Lowest-terms text: ``"p/q"``, or ``"p"`` when the denominator is 1."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def _u(x: Fraction) -> UnitRational:
    # results of the operations below are in [0,1] by construction
    return UnitRational(x)


def mv_add(x: Fraction, y: Fraction) -> UnitRational:
    """Truncated sum ``x ⊕ y = min(x + y, 1)``."""
    return _u(min(x + y, 1))


def mv_neg(x: Fraction) -> UnitRational:
    """``x* = 1 - x``."""
    return _u(1 - x)


def mv_mul_trunc(x: Fraction, y: Fraction) -> UnitRational:
    """Łukasiewicz product ``x ⊙ y``, computed as ``(x* ⊕ y*)*``."""
    return mv_neg(mv_add(mv_neg(x), mv_neg(y)))


def mv_sub(x: Fraction, y: Fraction) -> UnitRational:
    """Truncated difference ``x ⊖ y = x ⊙ y* = max(x - y, 0)``."""
    return mv_mul_trunc(x, mv_neg(y))


def mv_join(x: Fraction, y: Fraction) -> UnitRational:
    """``x ∨ y = (x ⊙ y*) ⊕ y``; equals ``max(x, y)``."""
    return mv_add(mv_mul_trunc(x, mv_neg(y)), y)


def mv_meet(x: Fraction, y: Fraction) -> UnitRational:
    """``x ∧ y = (x ⊕ y*) ⊙ y``; equals ``min(x, y)``."""
    return mv_mul_trunc(mv_add(x, mv_neg(y)), y)


def mv_multiple(k: int, x: Fraction) -> UnitRational:
    """The k-fold truncated sum ``x ⊕ ... ⊕ x`` (0 for k = 0)."""
    if k < 0:
        raise ValueError("multiplicity must be non-negative")
    acc = ZERO
    for _ in range(k):
        acc = mv_add(acc, x)
    return acc


def delta(n: int, x: Fraction) -> UnitRational:
    """Division operator ``δ_n x = x / n`` for n >= 1."""
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError("delta index must be an int")
    if n < 1:
        raise ValueError(f"delta index must be >= 1, got {n}")
    return _u(Fraction(x) / n)


def scalar(r: Fraction, x: Fraction) -> UnitRational:
    """Action of a scalar ``r`` in [0,1] ∩ Q on ``x``: the product ``r·x``."""
    r = UnitRational.of(r)
    return _u(r * x)

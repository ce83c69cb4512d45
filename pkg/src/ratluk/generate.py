"""Seeded random formulas and scalars for property tests and benchmarks."""

from __future__ import annotations

import random

from .algebra import UnitRational
from .syntax import DeltaN, Implies, Nabla, Neg, Node, Var

__all__ = ["random_scalar", "random_formula", "rng_from"]


def rng_from(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def random_scalar(seed, max_den: int = 12) -> UnitRational:
    rng = rng_from(seed)
    q = rng.randint(1, max_den)
    return UnitRational(rng.randint(0, q), q)


def random_formula(
    seed,
    *,
    dim: int = 2,
    depth: int = 4,
    lang: str = "ql",
    max_den: int = 12,
    max_delta: int = 4,
    leaf_prob: float = 0.2,
) -> Node:
    """A random formula over ``x0..x{dim-1}`` of depth at most ``depth``.

    ``lang`` picks the scalar connective: ``"ql"`` (∇_r), ``"ratluk"``
    (δ_n) or ``"luk"`` (none).  ``leaf_prob`` is the chance of stopping
    early at each inner position.
    """
    if lang not in ("ql", "ratluk", "luk"):
        raise ValueError(f"unknown language {lang!r}")
    rng = rng_from(seed)

    def go(d: int) -> Node:
        if d == 0 or rng.random() < leaf_prob:
            return Var(rng.randrange(dim))
        choice = rng.random()
        if choice < 0.25:
            return Neg(go(d - 1))
        if choice < 0.75 or lang == "luk":
            return Implies(go(d - 1), go(d - 1))
        if lang == "ql":
            return Nabla(random_scalar(rng, max_den), go(d - 1))
        return DeltaN(rng.randint(1, max_delta), go(d - 1))

    return go(depth)

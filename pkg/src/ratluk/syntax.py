"""Formulas of the two logics, their concrete syntax, and the translations.

One AST serves both languages.  The primitive nodes are :class:`Var`,
:class:`Neg`, :class:`Implies`, :class:`Nabla` (the rational-scalar
connective ∇_r) and :class:`DeltaN` (the division connective δ_n).  A
formula of the ∇-language never contains ``DeltaN``; a formula of rational
Łukasiewicz logic never contains ``Nabla``.  All other connectives are
built from these by the helper constructors below.

Grammar, tightest binding first::

    unary   ~  nabla(p/q)  Delta(p/q)  delta(n)
    *       (⊙, left-assoc)
    +       (⊕, left-assoc)
    /\\      (∧, left-assoc)
    \\/      (∨, left-assoc)
    ->      (right-assoc)
    <->     (left-assoc)

Variables are ``x0, x1, ...``.  The Unicode forms ¬ ⊙ ⊕ ∧ ∨ → ↔ ∇ Δ δ are
accepted as aliases.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .algebra import UnitRational, format_rational

__all__ = [
    "Var",
    "Neg",
    "Implies",
    "Nabla",
    "DeltaN",
    "Formula",
    "DFormula",
    "Node",
    "ParseError",
    "LanguageError",
    "Delta",
    "Plus",
    "Times",
    "Join",
    "Meet",
    "Iff",
    "Bottom",
    "multiple",
    "parse",
    "parse_ql",
    "parse_ratluk",
    "to_text",
    "dimension",
    "subformulas",
    "depth",
    "language_of",
    "check_ql",
    "check_ratluk",
    "translate_i1",
    "translate_i2",
]


@dataclass(frozen=True, slots=True)
class Var:
    index: int

    def __post_init__(self):
        if not isinstance(self.index, int) or self.index < 0:
            raise ValueError(f"variable index must be a natural number, got {self.index!r}")

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True, slots=True)
class Neg:
    child: Node

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True, slots=True)
class Implies:
    left: Node
    right: Node

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True, slots=True)
class Nabla:
    r: UnitRational
    child: Node

    def __post_init__(self):
        object.__setattr__(self, "r", UnitRational.of(self.r))

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True, slots=True)
class DeltaN:
    n: int
    child: Node

    def __post_init__(self):
        if not isinstance(self.n, int) or isinstance(self.n, bool) or self.n < 1:
            raise ValueError(f"delta index must be an integer >= 1, got {self.n!r}")

    def __str__(self):
        return to_text(self)


Node = Union[Var, Neg, Implies, Nabla, DeltaN]
# Aliases documenting which language a function expects.
Formula = Node
DFormula = Node


class ParseError(ValueError):
    """Syntax error; ``pos`` is the 0-based character offset."""

    def __init__(self, message: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos}")


class LanguageError(ValueError):
    """A connective that does not belong to the requested language."""


# -- derived connectives --------------------------------------------------


def Delta(r, phi: Node) -> Node:
    """Δ_r φ := ¬∇_r¬φ."""
    return Neg(Nabla(r, Neg(phi)))


def Plus(phi: Node, psi: Node) -> Node:
    """φ ⊕ ψ := ¬φ → ψ."""
    return Implies(Neg(phi), psi)


def Times(phi: Node, psi: Node) -> Node:
    """φ ⊙ ψ := ¬(¬φ ⊕ ¬ψ)."""
    return Neg(Plus(Neg(phi), Neg(psi)))


def Join(phi: Node, psi: Node) -> Node:
    """φ ∨ ψ := (φ → ψ) → ψ."""
    return Implies(Implies(phi, psi), psi)


def Meet(phi: Node, psi: Node) -> Node:
    """φ ∧ ψ := ¬(¬φ ∨ ¬ψ)."""
    return Neg(Join(Neg(phi), Neg(psi)))


def Iff(phi: Node, psi: Node) -> Node:
    """φ ↔ ψ := (φ → ψ) ∧ (ψ → φ)."""
    return Meet(Implies(phi, psi), Implies(psi, phi))


def Bottom(phi: Node) -> Node:
    """A formula that is constantly 0, built over ``phi``: ¬(φ → φ)."""
    return Neg(Implies(phi, phi))


def multiple(k: int, phi: Node) -> Node:
    """The k-fold sum φ ⊕ ... ⊕ φ, left-nested; ``Bottom(phi)`` for k = 0."""
    if k < 0:
        raise ValueError("multiplicity must be non-negative")
    if k == 0:
        return Bottom(phi)
    acc = phi
    for _ in range(k - 1):
        acc = Plus(acc, phi)
    return acc


# -- structural helpers ---------------------------------------------------


def _children(node: Node) -> tuple[Node, ...]:
    if isinstance(node, Var):
        return ()
    if isinstance(node, Implies):
        return (node.left, node.right)
    return (node.child,)


def _walk(node: Node):
    stack = [node]
    while stack:
        cur = stack.pop()
        yield cur
        stack.extend(_children(cur))


def subformulas(node: Node):
    """Every node of ``node`` (with repetitions for shared subtrees)."""
    return _walk(node)


def dimension(node: Node) -> int:
    """1 + the largest variable index (0 for a variable-free formula)."""
    return max((n.index + 1 for n in _walk(node) if isinstance(n, Var)), default=0)


def depth(node: Node) -> int:
    kids = _children(node)
    if not kids:
        return 0
    return 1 + max(depth(k) for k in kids)


def language_of(node: Node) -> str:
    """``"luk"`` (pure Łukasiewicz), ``"ql"``, ``"ratluk"`` or ``"mixed"``."""
    has_nabla = has_delta = False
    for n in _walk(node):
        has_nabla |= isinstance(n, Nabla)
        has_delta |= isinstance(n, DeltaN)
    if has_nabla and has_delta:
        return "mixed"
    if has_nabla:
        return "ql"
    if has_delta:
        return "ratluk"
    return "luk"


def check_ql(node: Node) -> Node:
    if any(isinstance(n, DeltaN) for n in _walk(node)):
        raise LanguageError("delta(n) is not a connective of the nabla language")
    return node


def check_ratluk(node: Node) -> Node:
    if any(isinstance(n, Nabla) for n in _walk(node)):
        raise LanguageError("nabla(r) is not a connective of rational Łukasiewicz logic")
    return node


# -- parser ---------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<var>x(?P<idx>\d+))
  | (?P<nabla>(?:nabla|∇)\s*\(\s*(?P<nr>[^()]*?)\s*\))
  | (?P<Delta>(?:Delta|Δ)\s*\(\s*(?P<Dr>[^()]*?)\s*\))
  | (?P<delta>(?:delta|δ)\s*\(\s*(?P<dn>[^()]*?)\s*\))
  | (?P<iff><->|↔)
  | (?P<imp>->|→)
  | (?P<join>\\/|∨)
  | (?P<meet>/\\|∧)
  | (?P<plus>\+|⊕)
  | (?P<times>\*|⊙)
  | (?P<neg>~|¬)
  | (?P<lp>\()
  | (?P<rp>\))
    """,
    re.VERBOSE,
)

_BINARY = {
    # kind: (precedence, right_assoc, builder)
    "times": (5, False, Times),
    "plus": (4, False, Plus),
    "meet": (3, False, Meet),
    "join": (2, False, Join),
    "imp": (1, True, Implies),
    "iff": (0, False, Iff),
}

_RAT_RE = re.compile(r"(\d+)(?:\s*/\s*(\d+))?\Z")


def _tokenize(text: str) -> list[tuple[str, object, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        kind = None
        for k in ("var", "nabla", "Delta", "delta", "iff", "imp", "join", "meet",
                  "plus", "times", "neg", "lp", "rp", "ws"):
            if m.group(k) is not None:
                kind = k
                break
        if kind == "var":
            tokens.append(("var", int(m.group("idx")), pos))
        elif kind in ("nabla", "Delta"):
            lit = m.group("nr" if kind == "nabla" else "Dr")
            tokens.append((kind, _scalar_literal(lit, pos, text), pos))
        elif kind == "delta":
            tokens.append(("delta", _delta_literal(m.group("dn"), pos, text), pos))
        elif kind != "ws":
            tokens.append((kind, None, pos))
        pos = m.end()
    tokens.append(("eof", None, len(text)))
    return tokens


def _scalar_literal(lit: str, pos: int, text: str) -> UnitRational:
    m = _RAT_RE.match(lit)
    if m is None:
        raise ParseError(f"malformed rational {lit!r}", pos, text)
    p = int(m.group(1))
    q = int(m.group(2)) if m.group(2) is not None else 1
    if q == 0:
        raise ParseError(f"zero denominator in {lit!r}", pos, text)
    if Fraction(p, q) > 1:
        raise ParseError(f"scalar {lit!r} is outside [0, 1]", pos, text)
    return UnitRational(p, q)


def _delta_literal(lit: str, pos: int, text: str) -> int:
    if not lit.isdigit():
        raise ParseError(f"malformed delta index {lit!r}", pos, text)
    n = int(lit)
    if n < 1:
        raise ParseError("delta(0) is not a connective; indices start at 1", pos, text)
    return n


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message: str, tok=None):
        tok = tok or self.peek()
        return ParseError(message, tok[2], self.text)

    def parse(self) -> Node:
        node = self.expr(0)
        tok = self.peek()
        if tok[0] != "eof":
            raise self.error(f"unexpected {self.text[tok[2]:tok[2] + 3]!r}")
        return node

    def expr(self, min_prec: int) -> Node:
        left = self.unary()
        while True:
            kind = self.peek()[0]
            if kind not in _BINARY:
                return left
            prec, right_assoc, build = _BINARY[kind]
            if prec < min_prec:
                return left
            self.advance()
            right = self.expr(prec if right_assoc else prec + 1)
            left = build(left, right)

    def unary(self) -> Node:
        kind, value, pos = self.advance()
        if kind == "var":
            return Var(value)
        if kind == "neg":
            return Neg(self.unary())
        if kind == "nabla":
            return Nabla(value, self.unary())
        if kind == "Delta":
            return Delta(value, self.unary())
        if kind == "delta":
            return DeltaN(value, self.unary())
        if kind == "lp":
            node = self.expr(0)
            if self.peek()[0] != "rp":
                raise self.error("expected ')'")
            self.advance()
            return node
        if kind == "eof":
            raise ParseError("unexpected end of input", pos, self.text)
        raise ParseError(f"unexpected {self.text[pos:pos + 3]!r}", pos, self.text)


def parse(text: str) -> Node:
    """Parse either language; the result may mix ∇ and δ connectives."""
    return _Parser(text).parse()


def parse_ql(text: str) -> Formula:
    node = parse(text)
    try:
        return check_ql(node)
    except LanguageError as exc:
        pos = max(text.find("delta"), text.find("δ"), 0)
        raise ParseError(str(exc), pos, text) from None


def parse_ratluk(text: str) -> DFormula:
    node = parse(text)
    try:
        return check_ratluk(node)
    except LanguageError as exc:
        hits = [i for i in (text.find(k) for k in ("nabla", "Delta", "∇", "Δ")) if i >= 0]
        raise ParseError(str(exc), min(hits, default=0), text) from None


# -- printer --------------------------------------------------------------
#
# The printer re-sugars the patterns produced by the derived constructors,
# so that parse(to_text(t)) == t for every AST t.  Each pattern is matched
# only when desugaring the printed form rebuilds exactly the same node.


def _match(node: Node):
    """Return (kind, operands) for the outermost sugar pattern of ``node``."""
    if isinstance(node, Neg):
        inner = node.child
        # Meet / Iff: Neg(Join(Neg a, Neg b))
        if isinstance(inner, Implies) and isinstance(inner.left, Implies):
            na, nb = inner.left.left, inner.left.right
            if nb == inner.right and isinstance(na, Neg) and isinstance(nb, Neg):
                a, b = na.child, nb.child
                if (isinstance(a, Implies) and isinstance(b, Implies)
                        and a.left == b.right and a.right == b.left):
                    return "iff", (a.left, a.right)
                return "meet", (a, b)
        # Times: Neg(Implies(Neg(Neg a), Neg b))
        if (isinstance(inner, Implies) and isinstance(inner.left, Neg)
                and isinstance(inner.left.child, Neg) and isinstance(inner.right, Neg)):
            return "times", (inner.left.child.child, inner.right.child)
        # Delta_r: Neg(Nabla(r, Neg a))
        if isinstance(inner, Nabla) and isinstance(inner.child, Neg):
            return "Delta", (inner.r, inner.child.child)
        return "neg", (inner,)
    if isinstance(node, Implies):
        if isinstance(node.left, Implies) and node.left.right == node.right:
            return "join", (node.left.left, node.right)
        if isinstance(node.left, Neg):
            return "plus", (node.left.child, node.right)
        return "imp", (node.left, node.right)
    if isinstance(node, Nabla):
        return "nabla", (node.r, node.child)
    if isinstance(node, DeltaN):
        return "delta", (node.n, node.child)
    return "var", (node.index,)


_SYMBOL = {"times": "*", "plus": "+", "meet": "/\\", "join": "\\/", "imp": "->", "iff": "<->"}


def to_text(node: Node) -> str:
    """Canonical concrete syntax; round-trips through :func:`parse`."""
    kind, ops = _match(node)
    if kind == "var":
        return f"x{ops[0]}"
    if kind in _BINARY:
        return f"{_operand(ops[0])} {_SYMBOL[kind]} {_operand(ops[1])}"
    if kind == "neg":
        prefix = "~"
    elif kind == "nabla":
        prefix = f"nabla({format_rational(ops[0])}) "
    elif kind == "Delta":
        prefix = f"Delta({format_rational(ops[0])}) "
    else:
        prefix = f"delta({ops[0]}) "
    return prefix + _operand(ops[-1])


def _operand(node: Node) -> str:
    text = to_text(node)
    if _match(node)[0] in _BINARY:
        return f"({text})"
    return text


# -- translations between the two logics ----------------------------------


def translate_i1(phi: DFormula) -> Formula:
    """Rational Łukasiewicz → ∇-language: δ_n φ becomes Δ_{1/n} φ."""
    check_ratluk(phi)
    memo: dict[Node, Node] = {}

    def go(node):
        hit = memo.get(node)
        if hit is not None:
            return hit
        if isinstance(node, Var):
            out = node
        elif isinstance(node, Neg):
            out = Neg(go(node.child))
        elif isinstance(node, Implies):
            out = Implies(go(node.left), go(node.right))
        else:
            out = Delta(UnitRational(1, node.n), go(node.child))
        memo[node] = out
        return out

    return go(phi)


def _scaled(r: Fraction, phi: Node) -> Node:
    # Δ_{m/n} φ ↦ m-fold sum of δ_n φ, with δ_1 read as the identity
    m, n = r.numerator, r.denominator
    base = phi if n == 1 else DeltaN(n, phi)
    return multiple(m, base)


def translate_i2(phi: Formula) -> DFormula:
    """∇-language → rational Łukasiewicz.

    Δ_r φ with r = m/n in lowest terms becomes the m-fold sum of δ_n φ; a
    bare ∇_r φ is first read as ¬Δ_r¬φ.
    """
    check_ql(phi)
    memo: dict[Node, Node] = {}

    def go(node):
        hit = memo.get(node)
        if hit is not None:
            return hit
        if isinstance(node, Var):
            out = node
        elif isinstance(node, Neg):
            inner = node.child
            if isinstance(inner, Nabla) and isinstance(inner.child, Neg):
                out = _scaled(inner.r, go(inner.child.child))
            else:
                out = Neg(go(inner))
        elif isinstance(node, Implies):
            out = Implies(go(node.left), go(node.right))
        else:
            out = Neg(_scaled(node.r, go(Neg(node.child))))
        memo[node] = out
        return out

    return go(phi)

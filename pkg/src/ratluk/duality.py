"""Rational polyhedra and the duality with finitely presented DMV-algebras.

Zerosets and vanishing ideals, principal-ideal membership, the construction
of a function with a prescribed zeroset, Q-maps and their composition,
the dual homomorphism ``f ↦ f∘λ``, quotient algebras realized as
restrictions, and the replacement of a principal-ideal generator by one
with integer coefficients.
"""

from __future__ import annotations

import json
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import lcm

from .algebra import UnitRational, format_rational, parse_rational
from .polytope import (
    Polytope,
    point_from_fractions,
    point_to_fractions,
    row_from_fractions,
)
from .pwl import (
    AffinePiece,
    Cell,
    DimensionError,
    InvariantError,
    PwlFunc,
    _check_budget,
    _finish,
    clipped_affine,
    constant,
    from_dict as pwl_from_dict,
    projection,
    pwl_abs_diff,
    pwl_delta,
    pwl_eval,
    pwl_join,
    pwl_meet,
    pwl_multiple,
    pwl_neg,
    pwl_plus,
    pwl_scalar,
    pwl_times,
    to_dict as pwl_to_dict,
)

__all__ = [
    "RatPolyhedron",
    "QMap",
    "Presentation",
    "QuotientElement",
    "DualHom",
    "QMapError",
    "PresentationMismatch",
    "zeroset",
    "vanishing_witness",
    "vanishing_ideal_member",
    "ideal_member",
    "ideal_member_witness",
    "distance_formula",
    "v_of_i_closure",
    "polyhedron_subset",
    "polyhedra_equal",
    "pwl_compose",
    "qmap_check",
    "qmap_witness",
    "qmap_compose",
    "identity_qmap",
    "dual_hom",
    "quotient_equal",
    "mv_approximant",
    "divisible_hull",
    "separating_element",
]


class QMapError(ValueError):
    """Domain/codomain mismatch or a failed image inclusion."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class PresentationMismatch(ValueError):
    pass


# -- polyhedra ------------------------------------------------------------


class RatPolyhedron:
    """A finite union of convex rational polytopes inside [0,1]^n.

    Pieces may be lower-dimensional.  The empty polyhedron has no pieces.
    """

    def __init__(self, ambient_dim: int, pieces: Iterable[Polytope] = ()):
        self.ambient_dim = ambient_dim
        kept: list[Polytope] = []
        for p in pieces:
            if p.dim != ambient_dim:
                raise DimensionError("piece has the wrong ambient dimension")
            if not p.is_empty:
                kept.append(p)
        self.pieces = tuple(_drop_contained(kept))

    @classmethod
    def cube(cls, n: int) -> RatPolyhedron:
        return cls(n, [Polytope.cube(n)])

    @classmethod
    def empty(cls, n: int) -> RatPolyhedron:
        return cls(n, [])

    @classmethod
    def from_points(cls, n: int, pieces: Iterable[Iterable[Sequence]]) -> RatPolyhedron:
        """Each piece given by its vertex list (any rational literals)."""
        polys = []
        for verts in pieces:
            pts = [tuple(parse_rational(v) if isinstance(v, str) else Fraction(v) for v in p)
                   for p in verts]
            polys.append(Polytope.from_points(n, pts))
        return cls(n, polys)

    @classmethod
    def point(cls, x: Sequence) -> RatPolyhedron:
        return cls.from_points(len(x), [[x]])

    @property
    def is_empty(self) -> bool:
        return not self.pieces

    def contains(self, x: Sequence) -> bool:
        pt = point_from_fractions([Fraction(v) if not isinstance(v, str) else parse_rational(v)
                                   for v in x])
        return any(p.contains_point(pt) for p in self.pieces)

    def vertices(self) -> list[tuple[Fraction, ...]]:
        seen: dict = {}
        for p in self.pieces:
            for v in p.vertices:
                seen.setdefault(v, None)
        return list(seen)

    @cached_property
    def generator(self) -> PwlFunc:
        """A function whose zeroset is exactly this polyhedron."""
        return distance_formula(self)

    def __repr__(self):
        return f"RatPolyhedron(ambient_dim={self.ambient_dim}, pieces={list(self.pieces)})"

    # serialization
    def to_dict(self) -> dict:
        pieces = []
        for p in self.pieces:
            pieces.append({
                "vertices": [[format_rational(c) for c in v] for v in p.vertices],
                "h_rep": [{"a": [format_rational(c) for c in a], "b": format_rational(b)}
                          for a, b in p.h_rep()],
            })
        return {"ambient_dim": self.ambient_dim, "pieces": pieces}

    @classmethod
    def from_dict(cls, data: dict) -> RatPolyhedron:
        n = int(data["ambient_dim"])
        polys = []
        for pd in data["pieces"]:
            verts = [tuple(parse_rational(c, unit=False) for c in v) for v in pd.get("vertices", [])]
            if "h_rep" in pd:
                rows = [row_from_fractions([parse_rational(a, unit=False) for a in h["a"]],
                                           parse_rational(h["b"], unit=False))
                        for h in pd["h_rep"]]
                poly = Polytope.from_rows(n, rows)
                if verts and set(verts) != set(poly.vertices):
                    raise ValueError("piece vertices do not match its H-representation")
            elif verts:
                poly = Polytope.from_points(n, verts)
            else:
                raise ValueError("piece needs vertices or an H-representation")
            if poly.is_empty:
                raise ValueError("polyhedron pieces must be nonempty")
            polys.append(poly)
        return cls(n, polys)

    def dumps(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def loads(cls, text: str) -> RatPolyhedron:
        return cls.from_dict(json.loads(text))


def _inside(a: Polytope, b: Polytope) -> bool:
    return all(b.contains_point(pt) for pt in a.points)


def _drop_contained(pieces: list[Polytope]) -> list[Polytope]:
    out = []
    for i, p in enumerate(pieces):
        dominated = False
        for j, q in enumerate(pieces):
            if i == j or not _inside(p, q):
                continue
            # equal pieces: keep the first occurrence only
            if _inside(q, p) and j > i:
                continue
            dominated = True
            break
        if not dominated:
            out.append(p)
    return out


# -- zerosets and ideals --------------------------------------------------


def zeroset(f: PwlFunc) -> RatPolyhedron:
    """``V(f) = f^{-1}(0)`` as a union of (possibly degenerate) polytopes."""
    pieces = []
    for c in f.cells:
        if not any(c.piece.num):
            pieces.append(c.polytope)
            continue
        # f >= 0 on the cell, so {f <= 0} cuts out exactly the zeros
        z = Polytope.from_rows(f.dim, c.polytope.rows + (c.piece.le_row(0),))
        if not z.is_empty:
            pieces.append(z)
    return RatPolyhedron(f.dim, pieces)


def vanishing_witness(f: PwlFunc, C: RatPolyhedron):
    """A point of ``C`` where ``f`` is positive, or None if f vanishes on C."""
    if f.dim != C.ambient_dim:
        raise DimensionError(f"dimension mismatch: {f.dim} vs {C.ambient_dim}")
    for piece in C.pieces:
        for c in f.cells:
            if c.piece.is_constant and c.piece.num[-1] == 0:
                continue
            if not _boxes_touch(piece, c.polytope):
                continue
            part = Polytope.from_rows(f.dim, piece.rows + c.polytope.rows)
            for pt in part.points:
                if c.piece.at(pt) > 0:
                    return tuple(UnitRational(v) for v in point_to_fractions(pt))
    return None


def _boxes_touch(a: Polytope, b: Polytope) -> bool:
    alo, ahi = a.bbox
    blo, bhi = b.bbox
    return all(max(alo[i], blo[i]) <= min(ahi[i], bhi[i]) for i in range(a.dim))


def vanishing_ideal_member(f: PwlFunc, C: RatPolyhedron) -> bool:
    """``f ∈ I(C)``: f vanishes at every point of C."""
    return vanishing_witness(f, C) is None


def ideal_member_witness(g: PwlFunc, f: PwlFunc):
    """None if ``g ∈ (f]``; otherwise a zero of f where g is positive."""
    if g.dim != f.dim:
        raise DimensionError(f"dimension mismatch: {g.dim} vs {f.dim}")
    return vanishing_witness(g, zeroset(f))


def ideal_member(g: PwlFunc, f: PwlFunc) -> bool:
    """``g ∈ (f]``, decided as the zeroset inclusion ``V(f) ⊆ V(g)``."""
    return ideal_member_witness(g, f) is None


# -- functions with prescribed zerosets -----------------------------------


def _nontrivial_rows(poly: Polytope):
    n = poly.dim
    for row in poly.rows:
        # a·x - b <= 0 on the whole cube: the row cuts nothing away
        if sum(max(a, 0) for a in row[:n]) <= row[n]:
            continue
        yield row


def distance_formula(C: RatPolyhedron) -> PwlFunc:
    """An integer-coefficient ``f`` with ``V(f) = C`` exactly.

    For a convex piece with rows ``a·x <= b`` the function
    ``max_rows clip(a·x - b)`` vanishes exactly on the piece; the meet over
    pieces vanishes exactly on their union.  Each per-piece function is
    verified against its (convex) piece before the meet is taken.
    """
    n = C.ambient_dim
    if C.is_empty:
        return constant(n, 1)
    f = None
    for poly in C.pieces:
        g = constant(n, 0)
        for row in _nontrivial_rows(poly):
            term = clipped_affine(n, AffinePiece(tuple(row[:n]) + (-row[n],), 1))
            g = pwl_join(g, term)
        _verify_piece(g, poly)
        f = g if f is None else pwl_meet(f, g)
    return f


def _verify_piece(g: PwlFunc, poly: Polytope) -> None:
    w = vanishing_witness(g, RatPolyhedron(g.dim, [poly]))
    if w is not None:
        raise InvariantError(f"constructed function does not vanish at {w}")
    for z in zeroset(g).pieces:
        if not _inside(z, poly):
            raise InvariantError("constructed function has zeros outside the polyhedron")


def v_of_i_closure(C: RatPolyhedron) -> RatPolyhedron:
    """``V(I(C))``: the zeroset of a function generating ``I(C)``."""
    out = zeroset(distance_formula(C))
    if not polyhedra_equal(out, C):
        raise InvariantError("V(I(C)) differs from C")
    return out


def polyhedron_subset(A: RatPolyhedron, B: RatPolyhedron) -> bool:
    """Exact inclusion ``A ⊆ B``."""
    if A.ambient_dim != B.ambient_dim:
        raise DimensionError("dimension mismatch")
    if A.is_empty:
        return True
    if B.is_empty:
        return False
    if all(any(_inside(a, b) for b in B.pieces) for a in A.pieces):
        return True
    return vanishing_ideal_member(B.generator, A)


def polyhedra_equal(A: RatPolyhedron, B: RatPolyhedron) -> bool:
    return polyhedron_subset(A, B) and polyhedron_subset(B, A)


def separating_element(x: Sequence) -> PwlFunc:
    """An element of DMV_n vanishing exactly at the rational point ``x``."""
    return distance_formula(RatPolyhedron.point(x))


# -- Q-maps ---------------------------------------------------------------


def _refine(dim: int, regions: list[tuple[Polytope, tuple[AffinePiece, ...]]],
            f: PwlFunc, *, full: bool) -> list[tuple[Polytope, tuple[AffinePiece, ...]]]:
    out = []
    for poly, pieces in regions:
        for c in f.cells:
            if len(f.cells) == 1:
                part = poly
            else:
                if not _boxes_touch(poly, c.polytope):
                    continue
                part = Polytope.from_rows(dim, poly.rows + c.polytope.rows)
            if part.is_empty or (full and not part.is_full_dimensional):
                continue
            out.append((part, pieces + (c.piece,)))
        _check_budget(len(out))
    return out


def _common_refinement(dim: int, start: Polytope, comps: Sequence[PwlFunc], *, full: bool):
    regions = [(start, ())]
    for f in comps:
        regions = _refine(dim, regions, f, full=full)
    return regions


def pwl_compose(g: PwlFunc, inner: Sequence[PwlFunc]) -> PwlFunc:
    """``g ∘ (inner_1, ..., inner_m)`` as a function on [0,1]^n."""
    if len(inner) != g.dim:
        raise DimensionError(f"{g.dim} inner functions needed, got {len(inner)}")
    if not inner:
        raise DimensionError("composition needs at least one inner function")
    n = inner[0].dim
    if any(h.dim != n for h in inner):
        raise DimensionError("inner functions have different dimensions")
    out: list[Cell] = []
    for region, pieces in _common_refinement(n, Polytope.cube(n), inner, full=True):
        for c in g.cells:
            # pull back each row a·y <= b of the outer cell through y = L(x)
            pulled = []
            for row in c.polytope.rows:
                lin = AffinePiece.const(n, Fraction(0))
                for a, p in zip(row[:-1], pieces):
                    if a:
                        lin = lin + p.scale(a)
                pulled.append(lin.le_row(row[-1]))
            part = Polytope.from_rows(n, list(region.rows) + pulled)
            if part.is_full_dimensional:
                out.append(Cell(part, c.piece.compose(pieces)))
                _check_budget(len(out))
    return _finish(n, out)


@dataclass(frozen=True)
class QMap:
    """A piecewise-linear map ``domain -> codomain`` with rational coefficients."""

    domain: RatPolyhedron
    codomain: RatPolyhedron
    components: tuple[PwlFunc, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        if len(self.components) != self.codomain.ambient_dim:
            raise DimensionError("one component per codomain coordinate is required")
        if any(c.dim != self.domain.ambient_dim for c in self.components):
            raise DimensionError("components must live on the domain's cube")

    def __call__(self, x: Sequence) -> tuple[UnitRational, ...]:
        return tuple(pwl_eval(c, x) for c in self.components)

    def to_dict(self) -> dict:
        return {
            "domain": self.domain.to_dict(),
            "codomain": self.codomain.to_dict(),
            "components": [pwl_to_dict(c) for c in self.components],
        }

    @classmethod
    def from_dict(cls, data: dict) -> QMap:
        return cls(
            RatPolyhedron.from_dict(data["domain"]),
            RatPolyhedron.from_dict(data["codomain"]),
            tuple(pwl_from_dict(c) for c in data["components"]),
        )

    def dumps(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def loads(cls, text: str) -> QMap:
        return cls.from_dict(json.loads(text))


def identity_qmap(P: RatPolyhedron) -> QMap:
    n = P.ambient_dim
    return QMap(P, P, tuple(projection(n, i) for i in range(n)))


def qmap_witness(lam: QMap):
    """None if ``λ(domain) ⊆ codomain``; otherwise a failure certificate.

    The certificate is ``("vertex", x, λ(x))`` for a domain vertex mapped
    outside the codomain, or ``("image", y)`` for a point of an affine
    image polytope outside it.
    """
    n, m = lam.domain.ambient_dim, lam.codomain.ambient_dim
    Q = lam.codomain
    for piece in lam.domain.pieces:
        for region, pieces in _common_refinement(n, piece, lam.components, full=False):
            images = []
            for pt in region.points:
                img = tuple(p.at(pt) for p in pieces)
                if not Q.contains(img):
                    x = tuple(UnitRational(v) for v in point_to_fractions(pt))
                    return ("vertex", x, tuple(UnitRational(v) for v in img))
                images.append(img)
            image = Polytope.from_points(m, images)
            if any(_inside(image, q) for q in Q.pieces):
                continue
            w = vanishing_witness(Q.generator, RatPolyhedron(m, [image]))
            if w is not None:
                return ("image", w)
    return None


def qmap_check(lam: QMap) -> bool:
    """Exact check that the map sends its domain into its codomain."""
    return qmap_witness(lam) is None


def qmap_compose(sigma: QMap, lam: QMap, *, check: bool = True) -> QMap:
    """``σ ∘ λ``; requires ``codomain(λ) = domain(σ)`` as sets."""
    if lam.codomain is not sigma.domain and not polyhedra_equal(lam.codomain, sigma.domain):
        raise QMapError("codomain of the inner map differs from the domain of the outer map")
    comps = tuple(pwl_compose(s, lam.components) for s in sigma.components)
    out = QMap(lam.domain, sigma.codomain, comps)
    if check:
        w = qmap_witness(out)
        if w is not None:
            raise QMapError("composite leaves its codomain", w)
    return out


# -- presentations and quotients ------------------------------------------


@dataclass(frozen=True, eq=False)
class Presentation:
    """``DMV_n / (generator]``; ``divisible=False`` marks an MV presentation."""

    n: int
    generator: PwlFunc
    divisible: bool = True

    def __post_init__(self):
        if self.generator.dim != self.n:
            raise DimensionError("generator dimension differs from n")

    @classmethod
    def of_polyhedron(cls, P: RatPolyhedron, *, divisible: bool = True) -> Presentation:
        pres = cls(P.ambient_dim, P.generator, divisible)
        pres.__dict__["polyhedron"] = P
        return pres

    @cached_property
    def polyhedron(self) -> RatPolyhedron:
        return zeroset(self.generator)

    def element(self, rep: PwlFunc) -> QuotientElement:
        return QuotientElement(rep, self)

    def same_as(self, other: Presentation) -> bool:
        return self is other or (self.n == other.n
                                 and polyhedra_equal(self.polyhedron, other.polyhedron))

    def to_dict(self) -> dict:
        return {"n": self.n, "generator": pwl_to_dict(self.generator), "divisible": self.divisible}

    @classmethod
    def from_dict(cls, data: dict) -> Presentation:
        gen = pwl_from_dict(data["generator"])
        return cls(int(data.get("n", gen.dim)), gen, bool(data.get("divisible", True)))


@dataclass(frozen=True, eq=False)
class QuotientElement:
    """The class of ``rep`` in ``DMV_n / (f]`` ≅ ``DMV_n`` restricted to V(f)."""

    rep: PwlFunc
    presentation: Presentation

    def __post_init__(self):
        if self.rep.dim != self.presentation.n:
            raise DimensionError("representative has the wrong dimension")

    def _other(self, other: QuotientElement) -> PwlFunc:
        if not self.presentation.same_as(other.presentation):
            raise PresentationMismatch("elements of different quotient algebras")
        return other.rep

    def _wrap(self, f: PwlFunc) -> QuotientElement:
        return QuotientElement(f, self.presentation)

    def __add__(self, other):
        return self._wrap(pwl_plus(self.rep, self._other(other)))

    def __mul__(self, other):
        return self._wrap(pwl_times(self.rep, self._other(other)))

    def __invert__(self):
        return self._wrap(pwl_neg(self.rep))

    def __or__(self, other):
        return self._wrap(pwl_join(self.rep, self._other(other)))

    def __and__(self, other):
        return self._wrap(pwl_meet(self.rep, self._other(other)))

    def delta(self, k: int) -> QuotientElement:
        if not self.presentation.divisible:
            raise PresentationMismatch("δ_n is not an operation of an MV presentation; "
                                       "take its divisible hull first")
        return self._wrap(pwl_delta(k, self.rep))

    def scale(self, r) -> QuotientElement:
        if not self.presentation.divisible:
            raise PresentationMismatch("scalar action needs a divisible presentation")
        return self._wrap(pwl_scalar(r, self.rep))

    def __call__(self, *x) -> UnitRational:
        if len(x) == 1 and isinstance(x[0], (tuple, list)):
            x = x[0]
        if not self.presentation.polyhedron.contains(x):
            raise ValueError("point is outside the presentation's polyhedron")
        return pwl_eval(self.rep, x)


def quotient_equal(a: QuotientElement, b: QuotientElement) -> bool:
    """Equality in the quotient: ``|a - b|`` vanishes on the zeroset."""
    if not a.presentation.same_as(b.presentation):
        raise PresentationMismatch("elements of different quotient algebras")
    return vanishing_ideal_member(pwl_abs_diff(a.rep, b.rep), a.presentation.polyhedron)


@dataclass(frozen=True, eq=False)
class DualHom:
    """``f ↦ f ∘ λ`` from functions on the codomain to functions on the domain."""

    qmap: QMap
    source: Presentation = field(repr=False)
    target: Presentation = field(repr=False)

    def __call__(self, elem: QuotientElement) -> QuotientElement:
        if not elem.presentation.same_as(self.source):
            raise PresentationMismatch("element is not over the map's codomain")
        return QuotientElement(pwl_compose(elem.rep, self.qmap.components), self.target)


def dual_hom(lam: QMap, source: Presentation | None = None,
             target: Presentation | None = None) -> DualHom:
    """The homomorphism ``D(λ): DMV_m|_Q -> DMV_n|_P`` of a Q-map ``λ: P -> Q``."""
    source = source or Presentation.of_polyhedron(lam.codomain)
    target = target or Presentation.of_polyhedron(lam.domain)
    if source.n != lam.codomain.ambient_dim or target.n != lam.domain.ambient_dim:
        raise PresentationMismatch("presentations do not match the map's dimensions")
    return DualHom(lam, source, target)


# -- integer generators and divisible hulls -------------------------------


def mv_approximant(f: PwlFunc) -> PwlFunc:
    """Integer-coefficient ``b = f ⊕ ... ⊕ f`` (m times) with ``(b] = (f]``.

    ``m`` is the lcm of all coefficient denominators of ``f``, so every
    piece of ``min(m·f, 1)`` has integer coefficients and ``V(b) = V(f)``.
    """
    m = 1
    for c in f.cells:
        m = lcm(m, c.piece.den)
    if m == 1:
        return f
    return pwl_multiple(m, f)


def divisible_hull(pres: Presentation) -> Presentation:
    """Reinterpret an MV presentation ``MV_n/(f]`` as ``DMV_n/(f]``.

    The generator must have integer coefficients (use
    :func:`mv_approximant` first).  Nothing is recomputed: the hull's
    elements are the rational piecewise-linear functions restricted to the
    same zeroset, now closed under δ_n and rational scalars.
    """
    if not pres.generator.has_integer_coefficients():
        raise ValueError("generator has non-integer coefficients; apply mv_approximant first")
    hull = Presentation(pres.n, pres.generator, divisible=True)
    if "polyhedron" in pres.__dict__:
        hull.__dict__["polyhedron"] = pres.__dict__["polyhedron"]
    return hull

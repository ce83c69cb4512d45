"""Exact convex rational polytopes inside the unit cube.

A polytope keeps its H-representation as integer rows ``(a_0..a_{n-1}, b)``
(meaning ``a·x <= b``) and caches its vertices as homogeneous integer points
``(p_0..p_{n-1}, q)``.  Both are computed and cross-checked by the integer
kernel selected in :mod:`ratluk._backend`.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import gcd, lcm

from ._backend import kernels

__all__ = [
    "Polytope",
    "cube_rows",
    "normalize_row",
    "row_from_fractions",
    "row_to_fractions",
    "point_to_fractions",
    "point_from_fractions",
    "vertex_enumerate",
    "convex_hull_rows",
]

Row = tuple[int, ...]
Point = tuple[int, ...]


def normalize_row(row: Sequence[int]) -> Row | None:
    """Divide an integer row by the gcd of its entries.

    Returns None for a row with all-zero coefficients (such a row is either
    vacuous or infeasible; callers decide which via the sign of ``b``).
    """
    if not any(row[:-1]):
        return None
    g = 0
    for v in row:
        g = gcd(g, v)
    if g > 1:
        return tuple(v // g for v in row)
    return tuple(row)


def row_from_fractions(coeffs: Sequence[Fraction], b: Fraction) -> tuple[int, ...]:
    """Integer row equivalent to ``coeffs·x <= b`` (not yet gcd-reduced)."""
    vals = [Fraction(c) for c in coeffs] + [Fraction(b)]
    d = 1
    for v in vals:
        d = lcm(d, v.denominator)
    return tuple(int(v * d) for v in vals)


def row_to_fractions(row: Row) -> tuple[tuple[Fraction, ...], Fraction]:
    return tuple(Fraction(a) for a in row[:-1]), Fraction(row[-1])


def point_to_fractions(pt: Point) -> tuple[Fraction, ...]:
    q = pt[-1]
    return tuple(Fraction(p, q) for p in pt[:-1])


def point_from_fractions(x: Sequence[Fraction]) -> Point:
    xs = [Fraction(v) for v in x]
    q = 1
    for v in xs:
        q = lcm(q, v.denominator)
    return tuple(int(v * q) for v in xs) + (q,)


def cube_rows(n: int) -> tuple[Row, ...]:
    rows = []
    for i in range(n):
        up = [0] * n
        up[i] = 1
        lo = [0] * n
        lo[i] = -1
        rows.append(tuple(up) + (1,))
        rows.append(tuple(lo) + (0,))
    return tuple(rows)


def _slack(row: Row, pt: Point) -> int:
    n = len(row) - 1
    s = -row[n] * pt[n]
    for i in range(n):
        s += row[i] * pt[i]
    return s


class Polytope:
    """A convex rational polytope {x : a·x <= b for every row}.

    Use :meth:`from_rows`, which enumerates vertices and drops redundant
    rows.  The polytope may be empty or lower-dimensional.
    """

    def __init__(self, dim: int, rows: tuple[Row, ...], points: tuple[Point, ...]):
        self.dim = dim
        self.rows = rows
        self.points = points

    @classmethod
    def from_rows(cls, dim: int, rows: Iterable[Sequence[int]], *, prune: bool = True) -> Polytope:
        clean = set()
        for r in rows:
            if len(r) != dim + 1:
                raise ValueError(f"constraint {r!r} does not have {dim + 1} entries")
            nr = normalize_row(tuple(int(v) for v in r))
            if nr is None:
                if r[-1] < 0:
                    return cls(dim, tuple(clean), ())
                continue
            clean.add(nr)
        ordered = sorted(clean)
        points = tuple(kernels.enumerate_vertices(ordered, dim))
        if not points:
            return cls(dim, tuple(ordered), ())
        if prune:
            ordered = _prune(ordered, points, dim)
        return cls(dim, tuple(ordered), points)

    @classmethod
    def cube(cls, n: int) -> Polytope:
        return cls.from_rows(n, cube_rows(n))

    @classmethod
    def from_points(cls, dim: int, points: Iterable[Sequence[Fraction]]) -> Polytope:
        """Convex hull of rational points (V-representation input)."""
        hpts = sorted({point_from_fractions(p) for p in points})
        if not hpts:
            return cls(dim, (), ())
        for p in hpts:
            if len(p) != dim + 1:
                raise ValueError("point has the wrong dimension")
        return cls.from_rows(dim, convex_hull_rows(dim, hpts))

    # -- basic queries --------------------------------------------------

    @property
    def is_empty(self) -> bool:
        return not self.points

    @cached_property
    def affine_dim(self) -> int:
        return kernels.affine_rank(list(self.points), self.dim)

    @property
    def is_full_dimensional(self) -> bool:
        return bool(self.points) and self.affine_dim == self.dim

    @cached_property
    def vertices(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(point_to_fractions(p) for p in self.points)

    @cached_property
    def bbox(self) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
        verts = self.vertices
        lo = tuple(min(v[i] for v in verts) for i in range(self.dim))
        hi = tuple(max(v[i] for v in verts) for i in range(self.dim))
        return lo, hi

    def h_rep(self) -> list[tuple[tuple[Fraction, ...], Fraction]]:
        return [row_to_fractions(r) for r in self.rows]

    def contains(self, x: Sequence[Fraction]) -> bool:
        pt = point_from_fractions(x)
        return all(_slack(r, pt) <= 0 for r in self.rows)

    def contains_point(self, pt: Point) -> bool:
        return all(_slack(r, pt) <= 0 for r in self.rows)

    # -- constructions --------------------------------------------------

    def intersect_rows(self, rows: Iterable[Sequence[int]]) -> Polytope:
        return Polytope.from_rows(self.dim, list(self.rows) + list(rows))

    def intersect(self, other: Polytope) -> Polytope:
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        if self.is_empty or other.is_empty or not _boxes_meet(self, other, strict=False):
            return Polytope(self.dim, (), ())
        return Polytope.from_rows(self.dim, self.rows + other.rows)

    def side(self, row: Row) -> tuple[int, int, int]:
        """Vertex counts strictly below, on, and strictly above ``a·x = b``."""
        return kernels.classify(row, list(self.points), self.dim)

    def split(self, row: Row) -> tuple[Polytope | None, Polytope | None]:
        """Cut along ``a·x = b`` into the parts ``a·x <= b`` and ``a·x >= b``.

        A part that would not be full-dimensional is returned as None.
        """
        neg, _zero, pos = self.side(row)
        if pos == 0:
            return self, None
        if neg == 0:
            return None, self
        flipped = tuple(-v for v in row)
        low = Polytope.from_rows(self.dim, self.rows + (row,))
        high = Polytope.from_rows(self.dim, self.rows + (flipped,))
        return (low if low.is_full_dimensional else None,
                high if high.is_full_dimensional else None)

    def volume(self) -> Fraction:
        """Exact n-dimensional volume (0 unless full-dimensional)."""
        if not self.is_full_dimensional:
            return Fraction(0)
        total = Fraction(0)
        fact = 1
        for k in range(2, self.dim + 1):
            fact *= k
        for simplex in self.triangulate():
            total += abs(_det_simplex(simplex)) / fact
        return total

    def triangulate(self) -> list[tuple[tuple[Fraction, ...], ...]]:
        """Pulling triangulation into simplices of dimension ``affine_dim``."""
        if self.is_empty:
            return []
        return [tuple(point_to_fractions(p) for p in s)
                for s in _pull(list(self.points), self.rows, self.dim, self.affine_dim)]

    def __eq__(self, other):
        if not isinstance(other, Polytope):
            return NotImplemented
        return self.dim == other.dim and set(self.points) == set(other.points)

    def __hash__(self):
        return hash((self.dim, frozenset(self.points)))

    def __repr__(self):
        verts = ", ".join("(" + ", ".join(str(c) for c in v) + ")" for v in self.vertices)
        return f"Polytope(dim={self.dim}, vertices=[{verts}])"


def _prune(rows: list[Row], points: tuple[Point, ...], dim: int) -> list[Row]:
    counts = kernels.tight_counts(rows, list(points), dim)
    rank = kernels.affine_rank(list(points), dim)
    need = dim if rank == dim else 1
    return [r for r, c in zip(rows, counts) if c >= need]


def _boxes_meet(p: Polytope, q: Polytope, *, strict: bool) -> bool:
    plo, phi = p.bbox
    qlo, qhi = q.bbox
    for i in range(p.dim):
        lo = max(plo[i], qlo[i])
        hi = min(phi[i], qhi[i])
        if hi < lo or (strict and hi == lo):
            return False
    return True


def _pull(points: list[Point], rows: Sequence[Row], dim: int, k: int) -> list[list[Point]]:
    if k == 0:
        return [[points[0]]]
    if k == 1:
        # segment: the two extreme points
        pts = sorted(points, key=lambda p: tuple(Fraction(c, p[-1]) for c in p[:-1]))
        return [[pts[0], pts[-1]]]
    apex = points[0]
    out = []
    seen = set()
    for r in rows:
        face = [p for p in points if _slack(r, p) == 0]
        if len(face) == len(points) or apex in face:
            continue
        key = frozenset(face)
        if key in seen:
            continue
        if kernels.affine_rank(face, dim) != k - 1:
            continue
        seen.add(key)
        for s in _pull(sorted(face), rows, dim, k - 1):
            out.append([apex] + s)
    return out


def _det_simplex(simplex: Sequence[Sequence[Fraction]]) -> Fraction:
    p0 = simplex[0]
    m = [[Fraction(v[i]) - p0[i] for i in range(len(p0))] for v in simplex[1:]]
    return _det(m)


def _det(m: list[list[Fraction]]) -> Fraction:
    m = [row[:] for row in m]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] / m[c][c]
            if f:
                for j in range(c, n):
                    m[i][j] -= f * m[c][j]
    return det


def _nullspace(m: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of {c : m·c = 0} by exact Gauss-Jordan elimination."""
    a = [row[:] for row in m]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        pv = a[r][c]
        a[r] = [v / pv for v in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -a[i][fc]
        basis.append(v)
    return basis


def convex_hull_rows(dim: int, points: Sequence[Point]) -> list[Row]:
    """Integer H-representation of the convex hull of homogeneous points.

    Equalities of the affine hull appear as pairs of opposite rows; facets
    are found by testing every hyperplane through affinely independent
    subsets of the points (desk-scale brute force).
    """
    fpts = [point_to_fractions(p) for p in points]
    p0 = fpts[0]
    diffs = [[v[i] - p0[i] for i in range(dim)] for v in fpts[1:]]
    diffs = [d for d in diffs if any(d)]
    normals = _nullspace(diffs, dim) if diffs else _nullspace([[Fraction(0)] * dim], dim)
    rows: set[Row] = set()
    for nv in normals:
        b = sum(nv[i] * p0[i] for i in range(dim))
        r = normalize_row(row_from_fractions(nv, b))
        rows.add(r)
        rows.add(tuple(-v for v in r))
    k = kernels.affine_rank(list(points), dim)
    if k <= 0:
        return sorted(rows)
    # direction basis of the affine hull
    dirs = _nullspace(normals, dim) if normals else [
        [Fraction(int(i == j)) for j in range(dim)] for i in range(dim)
    ]
    for subset in combinations(range(len(fpts)), k):
        base = fpts[subset[0]]
        sub = [[fpts[j][i] - base[i] for i in range(dim)] for j in subset[1:]]
        # a = Σ c_t dirs[t] with a ⟂ every difference in the subset
        m = [[sum(s[i] * d[i] for i in range(dim)) for d in dirs] for s in sub]
        ns = _nullspace(m, len(dirs)) if m else _nullspace([[Fraction(0)] * len(dirs)], len(dirs))
        if len(ns) != 1:
            continue
        a = [sum(ns[0][t] * dirs[t][i] for t in range(len(dirs))) for i in range(dim)]
        b = sum(a[i] * base[i] for i in range(dim))
        vals = [sum(a[i] * v[i] for i in range(dim)) - b for v in fpts]
        if all(v <= 0 for v in vals):
            rows.add(normalize_row(row_from_fractions(a, b)))
        elif all(v >= 0 for v in vals):
            rows.add(normalize_row(row_from_fractions([-c for c in a], -b)))
    return sorted(rows)


def vertex_enumerate(h_rep: Iterable[tuple[Sequence[Fraction], Fraction]], dim: int | None = None,
                     *, within_cube: bool = True) -> list[tuple[Fraction, ...]]:
    """Exact vertex set of ``{x : a·x <= b}``; empty list iff the set is empty.

    ``h_rep`` is a sequence of ``(a, b)`` pairs with rational entries.  With
    ``within_cube`` the unit-cube bounds are added, which guarantees
    boundedness.
    """
    h_rep = list(h_rep)
    if dim is None:
        if not h_rep:
            raise ValueError("dimension needed for an empty constraint list")
        dim = len(h_rep[0][0])
    rows = [row_from_fractions(a, b) for a, b in h_rep]
    if within_cube:
        rows += list(cube_rows(dim))
    poly = Polytope.from_rows(dim, rows, prune=False)
    return sorted(poly.vertices)

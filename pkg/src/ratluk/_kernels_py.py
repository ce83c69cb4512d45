"""Pure-Python integer kernels for exact polytope work.

Reference implementation of the compiled ``_kernels`` extension; the two
share one API and must return identical results.

Conventions: a constraint is an integer tuple ``(a_0, ..., a_{n-1}, b)``
meaning ``a·x <= b``; a point is an integer tuple ``(p_0, ..., p_{n-1}, q)``
with ``q > 0`` meaning ``x_i = p_i / q``, reduced so that the gcd of all
entries is 1.
"""

from itertools import combinations
from math import gcd

BACKEND = "python"


def solve(rows, n):
    """Solve the square system ``a_i·x = b_i`` for the n given rows.

    Returns the solution as a normalized point, or None when singular.
    Fraction-free Gauss-Jordan: every division is exact.
    """
    m = [list(r) for r in rows]
    prev = 1
    for k in range(n):
        piv = k
        while piv < n and m[piv][k] == 0:
            piv += 1
        if piv == n:
            return None
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
        mk = m[k]
        mkk = mk[k]
        for i in range(n):
            if i == k:
                continue
            mi = m[i]
            mik = mi[k]
            for j in range(n + 1):
                if j != k:
                    mi[j] = (mkk * mi[j] - mik * mk[j]) // prev
            mi[k] = 0
        prev = mkk
    q = prev
    point = [m[i][n] for i in range(n)]
    if q < 0:
        q = -q
        point = [-p for p in point]
    g = q
    for p in point:
        g = gcd(g, p)
    if g > 1:
        point = [p // g for p in point]
        q //= g
    point.append(q)
    return tuple(point)


def satisfies(rows, point, n):
    q = point[n]
    for r in rows:
        s = -r[n] * q
        for i in range(n):
            s += r[i] * point[i]
        if s > 0:
            return False
    return True


def enumerate_vertices(rows, n):
    """All vertices of the bounded polytope ``{x : a·x <= b for each row}``.

    Every n-subset of constraints is solved exactly; nonsingular solutions
    satisfying all constraints are the vertices.  The result is sorted.
    """
    rows = [tuple(r) for r in rows]
    if n == 0:
        return [(1,)] if all(r[0] >= 0 for r in rows) else []
    found = set()
    for subset in combinations(rows, n):
        pt = solve(subset, n)
        if pt is not None and pt not in found and satisfies(rows, pt, n):
            found.add(pt)
    return sorted(found)


def tight_counts(rows, points, n):
    """For every row, how many of ``points`` lie on its hyperplane."""
    out = []
    for r in rows:
        c = 0
        b = r[n]
        for pt in points:
            s = -b * pt[n]
            for i in range(n):
                s += r[i] * pt[i]
            if s == 0:
                c += 1
        out.append(c)
    return out


def classify(row, points, n):
    """Counts of points with ``a·x - b`` negative, zero and positive."""
    neg = zero = pos = 0
    b = row[n]
    for pt in points:
        s = -b * pt[n]
        for i in range(n):
            s += row[i] * pt[i]
        if s < 0:
            neg += 1
        elif s == 0:
            zero += 1
        else:
            pos += 1
    return neg, zero, pos


def affine_rank(points, n):
    """Dimension of the affine hull of ``points`` (-1 when empty)."""
    if not points:
        return -1
    p0 = points[0]
    q0 = p0[n]
    # difference vectors scaled to integers: q0*p - q*p0
    vecs = []
    for pt in points[1:]:
        q = pt[n]
        v = [q0 * pt[i] - q * p0[i] for i in range(n)]
        if any(v):
            vecs.append(v)
    rank = 0
    cols = n
    m = vecs
    row = 0
    for c in range(cols):
        piv = None
        for i in range(row, len(m)):
            if m[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        pr = m[row]
        for i in range(row + 1, len(m)):
            f = m[i][c]
            if f:
                pc = pr[c]
                m[i] = [pc * m[i][j] - f * pr[j] for j in range(cols)]
                g = 0
                for x in m[i]:
                    g = gcd(g, x)
                if g > 1:
                    m[i] = [x // g for x in m[i]]
        row += 1
        rank += 1
        if row == len(m):
            break
    return rank

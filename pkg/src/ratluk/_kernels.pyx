# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled integer kernels for exact polytope work.

Same API and results as ``_kernels_py``.  Arithmetic runs on int64 with
overflow detection; any computation that would overflow is redone with
Python integers by the reference implementation.
"""

from libc.stdlib cimport malloc, free

from . import _kernels_py as _py

BACKEND = "cython"

cdef extern from *:
    """
    static inline int rl_mul(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int rl_sub(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    static inline int rl_add(long long a, long long b, long long *r) {
        return __builtin_add_overflow(a, b, r);
    }
    """
    int rl_mul(long long a, long long b, long long *r) nogil
    int rl_sub(long long a, long long b, long long *r) nogil
    int rl_add(long long a, long long b, long long *r) nogil

# entries are kept below 2**62 so that negation never overflows
cdef long long LIMIT = 1LL << 62


cdef inline long long c_gcd(long long a, long long b) nogil:
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


cdef int load_rows(object rows, long long *dst, int m, int w) except -1:
    """Copy rows into dst; return 1 if some entry does not fit."""
    cdef int i, j
    cdef object v
    for i in range(m):
        r = rows[i]
        for j in range(w):
            v = r[j]
            if v >= LIMIT or v <= -LIMIT:
                return 1
            dst[i * w + j] = v
    return 0


cdef int solve_c(long long *A, int *idx, int n, long long *M, long long *out) nogil:
    """Bareiss-Jordan on the rows idx[0..n-1] of A.

    Returns 0 on success (out holds p_0..p_{n-1}, q), 1 if singular,
    2 on overflow.
    """
    cdef int w = n + 1
    cdef int i, j, k, piv
    cdef long long prev = 1, mkk, mik, t1, t2, t, q, g
    for i in range(n):
        for j in range(w):
            M[i * w + j] = A[idx[i] * w + j]
    for k in range(n):
        piv = k
        while piv < n and M[piv * w + k] == 0:
            piv += 1
        if piv == n:
            return 1
        if piv != k:
            for j in range(w):
                t = M[k * w + j]
                M[k * w + j] = M[piv * w + j]
                M[piv * w + j] = t
        mkk = M[k * w + k]
        for i in range(n):
            if i == k:
                continue
            mik = M[i * w + k]
            for j in range(w):
                if j == k:
                    continue
                if rl_mul(mkk, M[i * w + j], &t1):
                    return 2
                if rl_mul(mik, M[k * w + j], &t2):
                    return 2
                if rl_sub(t1, t2, &t):
                    return 2
                t = t // prev
                if t >= LIMIT or t <= -LIMIT:
                    return 2
                M[i * w + j] = t
            M[i * w + k] = 0
        prev = mkk
    q = prev
    if q < 0:
        q = -q
        for i in range(n):
            out[i] = -M[i * w + n]
    else:
        for i in range(n):
            out[i] = M[i * w + n]
    g = q
    for i in range(n):
        g = c_gcd(g, out[i])
    if g > 1:
        for i in range(n):
            out[i] = out[i] // g
        q = q // g
    out[n] = q
    return 0


cdef int feasible_c(long long *A, int m, int n, long long *pt) nogil:
    """1 feasible, 0 infeasible, 2 overflow."""
    cdef int i, j, w = n + 1
    cdef long long s, t
    for i in range(m):
        if rl_mul(-A[i * w + n], pt[n], &s):
            return 2
        for j in range(n):
            if rl_mul(A[i * w + j], pt[j], &t):
                return 2
            if rl_add(s, t, &s):
                return 2
        if s > 0:
            return 0
    return 1


def solve(rows, int n):
    return _py.solve(rows, n)


def satisfies(rows, point, int n):
    return _py.satisfies(rows, point, n)


def enumerate_vertices(rows, int n):
    rows = [tuple(r) for r in rows]
    cdef int m = len(rows)
    cdef int w = n + 1
    if n == 0 or m < n:
        return _py.enumerate_vertices(rows, n)
    cdef long long *A = <long long *> malloc(m * w * sizeof(long long))
    cdef long long *M = <long long *> malloc(n * w * sizeof(long long))
    cdef long long *out = <long long *> malloc(w * sizeof(long long))
    cdef int *idx = <int *> malloc(n * sizeof(int))
    cdef int i, status, feas
    found = set()
    try:
        if load_rows(rows, A, m, w):
            return _py.enumerate_vertices(rows, n)
        for i in range(n):
            idx[i] = i
        while True:
            status = solve_c(A, idx, n, M, out)
            if status == 0:
                feas = feasible_c(A, m, n, out)
                if feas == 2:
                    pt = tuple([out[i] for i in range(w)])
                    if _py.satisfies(rows, pt, n):
                        found.add(pt)
                elif feas == 1:
                    found.add(tuple([out[i] for i in range(w)]))
            elif status == 2:
                pt = _py.solve([rows[idx[i]] for i in range(n)], n)
                if pt is not None and _py.satisfies(rows, pt, n):
                    found.add(pt)
            # next combination in lexicographic order
            i = n - 1
            while i >= 0 and idx[i] == m - n + i:
                i -= 1
            if i < 0:
                break
            idx[i] += 1
            i += 1
            while i < n:
                idx[i] = idx[i - 1] + 1
                i += 1
    finally:
        free(A)
        free(M)
        free(out)
        free(idx)
    return sorted(found)


cdef int signed_slack(long long *r, long long *pt, int n, long long *s) nogil:
    cdef int j
    cdef long long t
    if rl_mul(-r[n], pt[n], s):
        return 1
    for j in range(n):
        if rl_mul(r[j], pt[j], &t):
            return 1
        if rl_add(s[0], t, s):
            return 1
    return 0


def tight_counts(rows, points, int n):
    cdef int w = n + 1
    cdef int m = len(rows)
    cdef int k = len(points)
    if m == 0 or k == 0:
        return [0] * m
    cdef long long *R = <long long *> malloc(m * w * sizeof(long long))
    cdef long long *P = <long long *> malloc(k * w * sizeof(long long))
    cdef long long s
    cdef int i, j, c
    try:
        if load_rows(rows, R, m, w) or load_rows(points, P, k, w):
            return _py.tight_counts(rows, points, n)
        counts = []
        for i in range(m):
            c = 0
            for j in range(k):
                if signed_slack(&R[i * w], &P[j * w], n, &s):
                    return _py.tight_counts(rows, points, n)
                if s == 0:
                    c += 1
            counts.append(c)
        return counts
    finally:
        free(R)
        free(P)


def classify(row, points, int n):
    cdef int w = n + 1
    cdef int k = len(points)
    if k == 0:
        return 0, 0, 0
    cdef long long *R = <long long *> malloc(w * sizeof(long long))
    cdef long long *P = <long long *> malloc(k * w * sizeof(long long))
    cdef long long s
    cdef int j, neg = 0, zero = 0, pos = 0
    try:
        if load_rows([row], R, 1, w) or load_rows(points, P, k, w):
            return _py.classify(row, points, n)
        for j in range(k):
            if signed_slack(R, &P[j * w], n, &s):
                return _py.classify(row, points, n)
            if s < 0:
                neg += 1
            elif s == 0:
                zero += 1
            else:
                pos += 1
        return neg, zero, pos
    finally:
        free(R)
        free(P)


def affine_rank(points, int n):
    return _py.affine_rank(points, n)

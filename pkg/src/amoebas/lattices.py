"""Integer linear algebra: Smith normal form, kernels, quotient maps.

Matrices are lists of lists of ints (rows).  All transforms are tracked so
kernels and quotient projections come with unimodular certificates.
"""
from __future__ import annotations

import math
from fractions import Fraction

from .errors import InternalInvariantError


def identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(A, B):
    n, k, m = len(A), len(B), len(B[0]) if B else 0
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        for t in range(k):
            a = Ai[t]
            if a == 0:
                continue
            Bt = B[t]
            row = out[i]
            for j in range(m):
                row[j] += a * Bt[j]
    return out


def mat_vec(A, v):
    return tuple(sum(a * x for a, x in zip(row, v)) for row in A)


def smith_normal_form(A):
    """Return (U, D, V, Uinv) with U*A*V = D diagonal, U and V unimodular.

    D's diagonal entries are nonnegative and satisfy the divisibility chain
    d1 | d2 | ... .  Pivoting is deterministic (smallest absolute value,
    lowest index on ties).
    """
    m = len(A)
    n = len(A[0]) if m else 0
    D = [list(row) for row in A]
    U = identity(m)
    Uinv = identity(m)
    V = identity(n)

    def row_swap(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]
        for r in range(m):
            Uinv[r][i], Uinv[r][j] = Uinv[r][j], Uinv[r][i]

    def row_neg(i):
        D[i] = [-x for x in D[i]]
        U[i] = [-x for x in U[i]]
        for r in range(m):
            Uinv[r][i] = -Uinv[r][i]

    def row_add(i, j, k):
        # row i += k * row j
        D[i] = [x + k * y for x, y in zip(D[i], D[j])]
        U[i] = [x + k * y for x, y in zip(U[i], U[j])]
        for r in range(m):
            Uinv[r][j] -= k * Uinv[r][i]

    def col_swap(i, j):
        for r in range(m):
            D[r][i], D[r][j] = D[r][j], D[r][i]
        for r in range(n):
            V[r][i], V[r][j] = V[r][j], V[r][i]

    def col_neg(i):
        for r in range(m):
            D[r][i] = -D[r][i]
        for r in range(n):
            V[r][i] = -V[r][i]

    def col_add(i, j, k):
        # col i += k * col j
        for r in range(m):
            D[r][i] += k * D[r][j]
        for r in range(n):
            V[r][i] += k * V[r][j]

    def pivot_search(t):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = D[i][j]
                if x != 0 and (best is None or abs(x) < abs(D[best[0]][best[1]])):
                    best = (i, j)
        return best

    def reduce_from(t0):
        t = t0
        while t < min(m, n):
            pos = pivot_search(t)
            if pos is None:
                break
            i, j = pos
            if i != t:
                row_swap(t, i)
            if j != t:
                col_swap(t, j)
            while True:
                again = False
                for r in range(t + 1, m):
                    if D[r][t] != 0:
                        k = D[r][t] // D[t][t]
                        row_add(r, t, -k)
                        if D[r][t] != 0:
                            row_swap(t, r)
                            again = True
                if again:
                    continue
                for c in range(t + 1, n):
                    if D[t][c] != 0:
                        k = D[t][c] // D[t][t]
                        col_add(c, t, -k)
                        if D[t][c] != 0:
                            col_swap(t, c)
                            again = True
                if not again:
                    break
            if D[t][t] < 0:
                row_neg(t)
            t += 1
        return t

    rank = reduce_from(0)

    # enforce the divisibility chain d_t | d_{t+1}; each fix replaces d_t by
    # gcd(d_t, d_{t+1}), so this terminates
    while True:
        bad = None
        for t in range(rank - 1):
            if D[t + 1][t + 1] % D[t][t] != 0:
                bad = t
                break
        if bad is None:
            break
        col_add(bad, bad + 1, 1)
        reduce_from(bad)

    if m and n and mat_mul(U, mat_mul(A, V)) != D:
        raise InternalInvariantError("smith normal form failed")
    if m:
        UU = mat_mul(U, Uinv)
        if UU != identity(m):
            raise InternalInvariantError("smith transform inverse failed")
    return U, D, V, Uinv


def smith_invariants(A) -> tuple[int, ...]:
    _, D, _, _ = smith_normal_form(A)
    out = []
    for t in range(min(len(D), len(D[0]) if D else 0)):
        if D[t][t] == 0:
            break
        out.append(D[t][t])
    return tuple(out)


def integer_kernel(A) -> list[tuple[int, ...]]:
    """Basis of the lattice {x in Z^n : A x = 0} (a saturated sublattice)."""
    m = len(A)
    n = len(A[0]) if m else 0
    if m == 0:
        return [tuple(row) for row in identity(n)]
    _, D, V, _ = smith_normal_form(A)
    rank = sum(1 for t in range(min(m, n)) if D[t][t] != 0)
    return [tuple(V[r][j] for r in range(n)) for j in range(rank, n)]


def quotient_map(generators, n):
    """Projection of Z^n onto Z^(n-k) killing the span of the generators.

    Returns (phi, right_inverse): phi is an (n-k) x n integer matrix whose
    kernel is the saturation of the generators' span, with phi * right_inverse
    the identity (so phi is split surjective).
    """
    gens = [list(g) for g in generators]
    k = len(gens)
    if k == 0:
        eye = identity(n)
        return [list(r) for r in eye], [list(r) for r in eye]
    B = [[gens[j][i] for j in range(k)] for i in range(n)]  # n x k, columns = gens
    U, D, _, Uinv = smith_normal_form(B)
    rank = sum(1 for t in range(min(n, k)) if D[t][t] != 0)
    if rank != k:
        raise InternalInvariantError("quotient_map expects independent generators")
    phi = [U[r] for r in range(k, n)]
    rinv = [[Uinv[i][j] for j in range(k, n)] for i in range(n)]
    check = mat_mul(phi, rinv)
    if check != identity(n - k):
        raise InternalInvariantError("quotient right inverse failed")
    for g in gens:
        if any(x != 0 for x in mat_vec(phi, g)):
            raise InternalInvariantError("quotient kernel failed")
    return [list(r) for r in phi], rinv


def primitive_vector(v) -> tuple[int, ...]:
    """Scale a rational vector by a positive rational to a primitive integer
    vector pointing the same way."""
    fracs = [Fraction(x) for x in v]
    if all(x == 0 for x in fracs):
        raise ValueError("zero vector has no primitive form")
    denlcm = math.lcm(*(x.denominator for x in fracs))
    ints = [int(x * denlcm) for x in fracs]
    g = math.gcd(*ints)
    return tuple(x // g for x in ints)


def rank_of_rows(rows) -> int:
    """Rank over Q of a list of rational row vectors."""
    mat = [[Fraction(x) for x in row] for row in rows]
    if not mat:
        return 0
    ncols = len(mat[0])
    rank = 0
    for col in range(ncols):
        piv = None
        for r in range(rank, len(mat)):
            if mat[r][col] != 0:
                piv = r
                break
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        pv = mat[rank][col]
        mat[rank] = [x / pv for x in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col] != 0:
                f = mat[r][col]
                mat[r] = [x - f * y for x, y in zip(mat[r], mat[rank])]
        rank += 1
        if rank == len(mat):
            break
    return rank


def in_rational_span(v, rows) -> bool:
    return rank_of_rows(list(rows) + [v]) == rank_of_rows(rows)


def independent_subset(rows) -> list[int]:
    """Indices of a maximal independent subset, greedily in order."""
    picked: list[int] = []
    chosen: list = []
    for i, row in enumerate(rows):
        if rank_of_rows(chosen + [row]) > len(chosen):
            picked.append(i)
            chosen.append(row)
    return picked

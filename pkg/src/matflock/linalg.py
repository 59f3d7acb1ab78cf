"""Exact linear algebra: integers, rationals, GF(p), and GF(p)[T].

Everything here is exact; no floating point.  Integer determinants use
fraction-free Bareiss elimination, rational work uses ``fractions.Fraction``,
GF(p) uses machine-word modular arithmetic, and Smith/Hermite normal forms
track unimodular transforms so lattice saturation can be read off directly.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .lattice import INF


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in range(2, int(math.isqrt(n)) + 1):
        if n % q == 0:
            return False
    return True


# ---------------------------------------------------------------------------
# matrix validation helpers

def as_int_matrix(rows) -> tuple[tuple[int, ...], ...]:
    """Validate a rectangular matrix with (arbitrary-precision) int entries."""
    out = []
    width = None
    for row in rows:
        r = tuple(row)
        if width is None:
            width = len(r)
        elif len(r) != width:
            raise ValueError("matrix is not rectangular")
        for x in r:
            if not isinstance(x, int) or isinstance(x, bool):
                raise ValueError(f"non-integer entry {x!r}")
        out.append(r)
    return tuple(out)


def as_rat_matrix(rows) -> tuple[tuple[Fraction, ...], ...]:
    """Validate a rectangular matrix with exact rational entries."""
    out = []
    width = None
    for row in rows:
        r = tuple(Fraction(x) for x in row)
        if width is None:
            width = len(r)
        elif len(r) != width:
            raise ValueError("matrix is not rectangular")
        out.append(r)
    return tuple(out)


# ---------------------------------------------------------------------------
# determinants

def det_int(rows: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix, by Bareiss elimination.

    All intermediate divisions are exact, so every value stays an int.
    Pivots are chosen with minimal absolute value to limit entry growth.
    """
    n = len(rows)
    if n == 0:
        return 1
    M = [list(r) for r in rows]
    if any(len(r) != n for r in M):
        raise ValueError("matrix is not square")
    sign = 1
    prev = 1
    for k in range(n - 1):
        piv = None
        for i in range(k, n):
            if M[i][k] != 0 and (piv is None or abs(M[i][k]) < abs(M[piv][k])):
                piv = i
        if piv is None:
            return 0
        if piv != k:
            M[k], M[piv] = M[piv], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def det_frac(rows) -> Fraction:
    """Determinant of a square rational matrix (row scaling + Bareiss)."""
    R = as_rat_matrix(rows)
    n = len(R)
    if n == 0:
        return Fraction(1)
    scale = Fraction(1)
    int_rows = []
    for row in R:
        m = math.lcm(*(x.denominator for x in row)) if row else 1
        scale *= m
        int_rows.append([int(x * m) for x in row])
    return Fraction(det_int(int_rows)) / scale


# ---------------------------------------------------------------------------
# p-adic valuations

def val_p_int(x: int, p: int):
    """p-adic valuation of an integer; INF for 0."""
    if x == 0:
        return INF
    v = 0
    x = abs(x)
    while x % p == 0:
        x //= p
        v += 1
    return v


def val_p(q, p: int):
    """p-adic valuation of an exact rational; INF for 0."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    q = Fraction(q)
    if q == 0:
        return INF
    return val_p_int(q.numerator, p) - val_p_int(q.denominator, p)


# ---------------------------------------------------------------------------
# GF(p)

def gf_rref(rows, p: int):
    """Reduced row echelon form over GF(p). Returns (rows, pivot_columns)."""
    M = [[x % p for x in row] for row in rows]
    nrows = len(M)
    ncols = len(M[0]) if M else 0
    pivots = []
    r = 0
    for j in range(ncols):
        if r >= nrows:
            break
        piv = next((i for i in range(r, nrows) if M[i][j]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = pow(M[r][j], -1, p)
        M[r] = [(x * inv) % p for x in M[r]]
        for i in range(nrows):
            if i != r and M[i][j]:
                c = M[i][j]
                M[i] = [(a - c * b) % p for a, b in zip(M[i], M[r])]
        pivots.append(j)
        r += 1
    return [tuple(row) for row in M], pivots


def gf_rank(rows, p: int) -> int:
    return len(gf_rref(rows, p)[1])


def gf_row_space(rows, p: int) -> tuple:
    """Canonical form of the row space over GF(p): nonzero RREF rows."""
    rref, pivots = gf_rref(rows, p)
    return tuple(rref[: len(pivots)])


# ---------------------------------------------------------------------------
# rationals

def rat_rref(rows):
    """RREF over Q. Returns (rows as tuples of Fractions, pivot columns)."""
    M = [[Fraction(x) for x in row] for row in rows]
    nrows = len(M)
    ncols = len(M[0]) if M else 0
    pivots = []
    r = 0
    for j in range(ncols):
        if r >= nrows:
            break
        piv = next((i for i in range(r, nrows) if M[i][j] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][j]
        M[r] = [x * inv for x in M[r]]
        for i in range(nrows):
            if i != r and M[i][j] != 0:
                c = M[i][j]
                M[i] = [a - c * b for a, b in zip(M[i], M[r])]
        pivots.append(j)
        r += 1
    return [tuple(row) for row in M], pivots


def rat_rank(rows) -> int:
    return len(rat_rref(rows)[1])


def rat_solve(A, b):
    """One exact solution of A x = b over Q, or None if inconsistent.

    Free variables are set to 0.
    """
    aug = [list(row) + [bx] for row, bx in zip(A, b)]
    if not aug:
        return ()
    ncols = len(A[0])
    rref, pivots = rat_rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for r, j in enumerate(pivots):
        x[j] = rref[r][-1]
    return tuple(x)


def rat_kernel(A):
    """Basis of the right kernel {x : A x = 0} over Q."""
    if not A:
        return []
    ncols = len(A[0])
    rref, pivots = rat_rref(A)
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, j in enumerate(pivots):
            v[j] = -rref[r][f]
        basis.append(tuple(v))
    return basis


# ---------------------------------------------------------------------------
# Smith and Hermite normal forms

def smith_normal_form(A):
    """Smith normal form with transforms: returns (S, U, V), S = U A V.

    U and V are unimodular; the diagonal of S is the divisor chain
    d_1 | d_2 | ..., all nonnegative.  Pivots are chosen with minimal
    absolute value to limit entry growth.
    """
    S = [list(map(int, row)) for row in A]
    m = len(S)
    n = len(S[0]) if S else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(a, b):
        S[a], S[b] = S[b], S[a]
        U[a], U[b] = U[b], U[a]

    def swap_cols(a, b):
        for row in S:
            row[a], row[b] = row[b], row[a]
        for row in V:
            row[a], row[b] = row[b], row[a]

    def add_row(dst, src, c):
        S[dst] = [x + c * y for x, y in zip(S[dst], S[src])]
        U[dst] = [x + c * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, c):
        for row in S:
            row[dst] += c * row[src]
        for row in V:
            row[dst] += c * row[src]

    t = 0
    while t < min(m, n):
        piv = None
        for i in range(t, m):
            for j in range(t, n):
                if S[i][j] != 0 and (piv is None or abs(S[i][j]) < abs(S[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        while True:
            changed = False
            for i in range(t + 1, m):
                if S[i][t] != 0:
                    q = S[i][t] // S[t][t]
                    add_row(i, t, -q)
                    if S[i][t] != 0:
                        swap_rows(i, t)
                        changed = True
            for j in range(t + 1, n):
                if S[t][j] != 0:
                    q = S[t][j] // S[t][t]
                    add_col(j, t, -q)
                    if S[t][j] != 0:
                        swap_cols(j, t)
                        changed = True
            if not changed:
                break
        # divisor chain: pivot must divide the remaining submatrix
        d = S[t][t]
        offender = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if S[i][j] % d != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            add_row(t, offender, 1)
            continue
        if S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return ([tuple(r) for r in S], [tuple(r) for r in U], [tuple(r) for r in V])


def snf_diagonal(A) -> list[int]:
    S, _, _ = smith_normal_form(A)
    k = min(len(S), len(S[0]) if S else 0)
    return [S[i][i] for i in range(k)]


def hermite_normal_form(rows):
    """Row-style Hermite normal form of the integer row lattice.

    Canonical: positive pivots, entries above each pivot reduced into
    [0, pivot), zero rows dropped.
    """
    M = [list(map(int, row)) for row in rows]
    if not M:
        return ()
    ncols = len(M[0])
    r = 0
    for j in range(ncols):
        while True:
            piv = None
            for i in range(r, len(M)):
                if M[i][j] != 0 and (piv is None or abs(M[i][j]) < abs(M[piv][j])):
                    piv = i
            if piv is None:
                break
            M[r], M[piv] = M[piv], M[r]
            done = True
            for i in range(r + 1, len(M)):
                if M[i][j] != 0:
                    q = M[i][j] // M[r][j]
                    M[i] = [x - q * y for x, y in zip(M[i], M[r])]
                    if M[i][j] != 0:
                        done = False
            if done:
                break
        if piv is None:
            continue
        if M[r][j] < 0:
            M[r] = [-x for x in M[r]]
        for i in range(r):
            q = M[i][j] // M[r][j]
            if q:
                M[i] = [x - q * y for x, y in zip(M[i], M[r])]
        r += 1
        if r == len(M):
            break
    return tuple(tuple(row) for row in M[:r] if any(row))


def integer_right_kernel(A, ncols: int | None = None):
    """Basis of the saturated lattice {x in Z^n : A x = 0}.

    ``ncols`` is required when A has no rows.
    """
    m = len(A)
    if m == 0:
        if ncols is None:
            raise ValueError("ncols required for an empty matrix")
        return [tuple(int(i == j) for i in range(ncols)) for j in range(ncols)]
    n = len(A[0])
    S, _, V = smith_normal_form(A)
    rank = sum(1 for i in range(min(m, n)) if S[i][i] != 0)
    return [tuple(V[i][j] for i in range(n)) for j in range(rank, n)]


def saturate_rows(rows):
    """Basis of rowspace_Q(rows) ∩ Z^n, for a full-row-rank rational matrix.

    Clears denominators, then saturates via the kernel-of-kernel of the
    integer row space; the result is put in Hermite normal form so it is
    canonical.
    """
    R = as_rat_matrix(rows)
    if not R:
        raise ValueError("empty matrix")
    d = len(R)
    n = len(R[0])
    if rat_rank(R) != d:
        raise ValueError("matrix does not have full row rank")
    int_rows = []
    for row in R:
        m = math.lcm(*(x.denominator for x in row))
        int_rows.append([int(x * m) for x in row])
    kern = integer_right_kernel(int_rows)
    if not kern:
        sat = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    else:
        sat = integer_right_kernel([list(k) for k in kern], ncols=n)
    return hermite_normal_form(sat)


def is_saturated(int_rows) -> bool:
    """True when the rows generate a saturated full-rank lattice."""
    A = as_int_matrix(int_rows)
    d = len(A)
    diag = snf_diagonal(A)
    return len(diag) >= d and all(abs(x) == 1 for x in diag[:d])


# ---------------------------------------------------------------------------
# polynomial matrices over GF(p)[T]
#
# Additive parametrizations with prime-field coefficients reduce to matrices
# over the (commutative) ring GF(p)[T]; their rank over the fraction field
# gives the generic rank of the parametrized variety.

def poly_trim(c: tuple[int, ...]) -> tuple[int, ...]:
    i = len(c)
    while i > 0 and c[i - 1] == 0:
        i -= 1
    return tuple(c[:i])


def poly_mul(a, b, p: int):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return poly_trim(tuple(out))


def poly_sub(a, b, p: int):
    n = max(len(a), len(b))
    out = [0] * n
    for i in range(n):
        x = a[i] if i < len(a) else 0
        y = b[i] if i < len(b) else 0
        out[i] = (x - y) % p
    return poly_trim(tuple(out))


def poly_add(a, b, p: int):
    n = max(len(a), len(b))
    out = [0] * n
    for i in range(n):
        x = a[i] if i < len(a) else 0
        y = b[i] if i < len(b) else 0
        out[i] = (x + y) % p
    return poly_trim(tuple(out))


def poly_scale(a, c: int, p: int):
    c %= p
    if c == 0:
        return ()
    return poly_trim(tuple((c * x) % p for x in a))


def polymat_rank(rows, p: int) -> int:
    """Rank over GF(p)(T) of a matrix with GF(p)[T] entries.

    Cross-multiplication echelon form; entry degree growth is irrelevant at
    this scale.
    """
    M = [[poly_trim(tuple(e)) for e in row] for row in rows]
    nrows = len(M)
    ncols = len(M[0]) if M else 0
    r = 0
    for j in range(ncols):
        if r >= nrows:
            break
        piv = next((i for i in range(r, nrows) if M[i][j]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        for i in range(r + 1, nrows):
            if M[i][j]:
                c = M[i][j]
                pivval = M[r][j]
                M[i] = [poly_sub(poly_mul(x, pivval, p), poly_mul(y, c, p), p)
                        for x, y in zip(M[i], M[r])]
        r += 1
    return r

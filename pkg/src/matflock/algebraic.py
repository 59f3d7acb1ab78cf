"""Algebraic matroid representations with computable twist structure.

Two variety classes are implemented exactly:

* toric: the closure of a monomial map given by an integer matrix A whose
  rows generate a saturated lattice; twisting by alpha scales columns by
  p^(-alpha_i), so basis competition is decided by p-adic minor valuations.

* linearized: additive-polynomial parametrizations over GF(p), coordinates
  sums of terms c * x_v^(p^k) with prime-field coefficients; twisting is a
  Frobenius-level shift on coordinates, with domain reparametrizations
  x_v -> x_v^p used to keep everything polynomial.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from . import linalg
from .lattice import INF
from .matroid import GF, Matroid, matroid_from_matrix
from .valuation import Valuation, matroid_at, optimal_masks
from .flock import MatroidFlock


class DegenerateParametrization(ValueError):
    """Tangent rank dropped below the generic rank: the base point is not general."""


# ---------------------------------------------------------------------------
# toric representations

def saturate_lattice(rows):
    """Integer basis of rowspace_Q(rows) ∩ Z^E, rank preserved."""
    return linalg.saturate_rows(rows)


def padic_minor_valuation(rows, cols, p: int, ground=None):
    """val_p(det A_B) for the column subset B; ∞ when the minor vanishes."""
    if not linalg.is_prime(p):
        raise ValueError(f"{p} is not prime")
    A = linalg.as_rat_matrix(rows)
    n = len(A[0]) if A else 0
    if ground is None:
        ground = tuple(range(1, n + 1))
    ground = tuple(ground)
    index = {e: i for i, e in enumerate(ground)}
    try:
        picks = sorted(index[c] for c in cols)
    except KeyError as exc:
        raise ValueError(f"unknown column {exc.args[0]!r}") from None
    if len(picks) != len(A):
        raise ValueError("column subset size differs from the row count")
    sub = [[row[j] for j in picks] for row in A]
    det = linalg.det_frac(sub)
    return INF if det == 0 else linalg.val_p(det, p)


@dataclass(frozen=True)
class ToricRep:
    """A saturated integer d x n matrix together with a prime p."""
    A: tuple
    p: int
    ground: tuple = ()

    def __post_init__(self):
        A = linalg.as_int_matrix(self.A)
        object.__setattr__(self, "A", A)
        if not linalg.is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        n = len(A[0]) if A else 0
        ground = self.ground or tuple(range(1, n + 1))
        if len(ground) != n:
            raise ValueError("ground size does not match column count")
        if tuple(sorted(ground)) != tuple(ground):
            raise ValueError("ground must be sorted (columns align positionally)")
        object.__setattr__(self, "ground", tuple(ground))
        if linalg.rat_rank(A) != len(A):
            raise ValueError("matrix does not have full row rank")
        if not linalg.is_saturated(A):
            raise ValueError(
                "rows do not generate a saturated lattice; apply saturate_lattice")

    @property
    def d(self) -> int:
        return len(self.A)

    @property
    def n(self) -> int:
        return len(self.A[0])


_lindstrom_cache: dict[ToricRep, Valuation] = {}


def lindstrom_toric(rep: ToricRep) -> Valuation:
    """The valuation B -> val_p(det A_B) over all d-subsets of columns.

    Saturation guarantees some minor is a p-adic unit, so the minimum value
    is 0 and the support matroid is the column matroid of A over Q.
    """
    got = _lindstrom_cache.get(rep)
    if got is not None:
        return got
    n, d = rep.n, rep.d
    finite = {}
    for combo in itertools.combinations(range(n), d):
        sub = [[row[j] for j in combo] for row in rep.A]
        det = linalg.det_int(sub)
        if det != 0:
            finite[sum(1 << j for j in combo)] = linalg.val_p_int(det, rep.p)
    nu = Valuation(rep.ground, d, finite)
    _lindstrom_cache[rep] = nu
    return nu


def toric_matroid_at(rep: ToricRep, alpha) -> Matroid:
    """Bases minimizing val_p(det A_B) - e_B . alpha (column scaling by p^-alpha)."""
    return matroid_at(lindstrom_toric(rep), alpha)


def flock_from_toric(rep: ToricRep) -> MatroidFlock:
    nu = lindstrom_toric(rep)
    return MatroidFlock(rep.ground, rep.d, lambda a: optimal_masks(nu, a),
                        "toric", valuation=nu)


# ---------------------------------------------------------------------------
# linearized (additive-polynomial) representations

class LinearizedParam:
    """An additive parametrization: coordinate i is sum of c * x_v^(p^k).

    Coefficients live in the prime field GF(p), so inverse Frobenius fixes
    them and all twist mechanics reduce to shifting the exponents k.
    """

    def __init__(self, p: int, m: int, coords, ground=None):
        if not linalg.is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.m = int(m)
        canon = []
        for i, terms in enumerate(coords):
            seen = {}
            for (v, k, c) in terms:
                v, k, c = int(v), int(k), int(c) % p
                if not 0 <= v < self.m:
                    raise ValueError(f"coordinate {i}: parameter index {v} out of range")
                if k < 0:
                    raise ValueError(f"coordinate {i}: negative Frobenius level")
                if c == 0:
                    raise ValueError(f"coordinate {i}: zero coefficient")
                if (v, k) in seen:
                    raise ValueError(f"coordinate {i}: duplicate term for (v={v}, k={k})")
                seen[(v, k)] = c
            if not seen:
                raise ValueError(f"coordinate {i} has no terms")
            canon.append(tuple(sorted((v, k, c) for (v, k), c in seen.items())))
        self.coords = tuple(canon)
        n = len(self.coords)
        self.ground = tuple(ground) if ground is not None else tuple(range(1, n + 1))
        if len(self.ground) != n:
            raise ValueError("ground size does not match coordinate count")
        if tuple(sorted(self.ground)) != self.ground:
            raise ValueError("ground must be sorted (coordinates align positionally)")

    @property
    def n(self) -> int:
        return len(self.coords)

    def __eq__(self, other):
        return (isinstance(other, LinearizedParam) and self.p == other.p
                and self.m == other.m and self.coords == other.coords
                and self.ground == other.ground)

    def __hash__(self):
        return hash((self.p, self.m, self.coords, self.ground))

    def __repr__(self):
        return f"LinearizedParam(p={self.p}, m={self.m}, n={self.n})"


def linearized_shift(param: LinearizedParam, alpha) -> LinearizedParam:
    """Apply F^(-alpha_i) to coordinate i, as a new additive parametrization.

    Raising a coordinate (negative alpha_i) always stays polynomial.
    Lowering needs every Frobenius level of that coordinate positive; a
    blocking level-0 variable is fixed by the global reparametrization
    x_v -> x_v^p, which leaves the image variety unchanged.  The result is
    normalized by undoing any reparametrization common to all occurrences of
    a variable, so shifting by 1 and then -1 is the identity.
    """
    alpha = tuple(int(a) for a in alpha)
    if len(alpha) != param.n:
        raise ValueError("alpha has the wrong length")
    work = [{(v, k): c for (v, k, c) in terms} for terms in param.coords]

    def bump(var):
        for i in range(len(work)):
            work[i] = {(v, k + (1 if v == var else 0)): c
                       for (v, k), c in work[i].items()}

    for i, a in enumerate(alpha):
        if a < 0:
            work[i] = {(v, k - a): c for (v, k), c in work[i].items()}
    for i, a in enumerate(alpha):
        for _ in range(max(a, 0)):
            for var in {v for (v, k) in work[i] if k == 0}:
                bump(var)
            work[i] = {(v, k - 1): c for (v, k), c in work[i].items()}
    # normalize: every variable should reach level 0 somewhere
    for var in range(param.m):
        ks = [k for terms in work for (v, k) in terms if v == var]
        drop = min(ks, default=0)
        if drop > 0:
            for i in range(len(work)):
                work[i] = {(v, k - (drop if v == var else 0)): c
                           for (v, k), c in work[i].items()}
    coords = [[(v, k, c) for (v, k), c in terms.items()] for terms in work]
    return LinearizedParam(param.p, param.m, coords, param.ground)


def linearized_tangent(param: LinearizedParam):
    """The Jacobian at the origin: coefficient of the level-0 term per (v, i)."""
    rows = []
    for v in range(param.m):
        row = [0] * param.n
        for i, terms in enumerate(param.coords):
            for (tv, k, c) in terms:
                if tv == v and k == 0:
                    row[i] = c
        rows.append(tuple(row))
    return tuple(rows)


def _param_polymatrix(param: LinearizedParam):
    """The m x n matrix over GF(p)[T]: entry (v, i) collects coordinate i's
    terms in variable v, with T recording the Frobenius level."""
    mat = []
    for v in range(param.m):
        row = []
        for terms in param.coords:
            coeffs = {k: c for (tv, k, c) in terms if tv == v}
            deg = max(coeffs, default=-1)
            row.append(tuple(coeffs.get(k, 0) for k in range(deg + 1)))
        mat.append(row)
    return mat


def generic_rank(param: LinearizedParam) -> int:
    """Rank of the parametrization over GF(p)(T), T standing for Frobenius.

    Prime-field coefficients commute with Frobenius, so each coordinate is a
    column of univariate polynomials and algebraic independence matches
    linear independence of columns.
    """
    return linalg.polymat_rank(_param_polymatrix(param), param.p)


def linearized_support_matroid(param: LinearizedParam) -> Matroid:
    """Column matroid over GF(p)(T): the matroid the parametrization represents."""
    d = generic_rank(param)
    mat = _param_polymatrix(param)
    masks = []
    for combo in itertools.combinations(range(param.n), d):
        sub = [[row[j] for j in combo] for row in mat]
        if linalg.polymat_rank(sub, param.p) == d:
            masks.append(sum(1 << j for j in combo))
    return Matroid(param.ground, masks)


def _saturated_tangent(param: LinearizedParam, d: int):
    """Tangent rows at 0 via saturation of the GF(p)[T] row module at (T).

    The plain level-0 Jacobian misses tangent directions when the
    parametrization is inseparable.  Replacing GF(p)-combinations of rows
    whose constant terms vanish by their quotient under T strictly lowers
    total degree and terminates with an evaluation of full rank d, which
    spans the true tangent space of the image."""
    p = param.p
    mat = _param_polymatrix(param)
    # echelon over GF(p)(T): keep d independent polynomial rows spanning the row space
    rows = [list(r) for r in mat]
    kept = []
    r = 0
    for j in range(param.n):
        if r >= len(rows):
            break
        piv = next((i for i in range(r, len(rows)) if rows[i][j]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(r + 1, len(rows)):
            if rows[i][j]:
                c, pv = rows[i][j], rows[r][j]
                rows[i] = [linalg.poly_sub(linalg.poly_mul(x, pv, p),
                                           linalg.poly_mul(y, c, p), p)
                           for x, y in zip(rows[i], rows[r])]
        r += 1
    kept = [row for row in rows[:r]]
    if len(kept) != d:
        raise DegenerateParametrization(
            f"row space rank {len(kept)} differs from generic rank {d}")

    while True:
        evals = [[(poly[0] if poly else 0) for poly in row] for row in kept]
        if linalg.gf_rank(evals, p) == d:
            return tuple(tuple(x % p for x in row) for row in evals)
        # a GF(p) combination with zero constant term: divide it by T
        aug = [list(ev) + [int(i == k) for k in range(d)]
               for i, ev in enumerate(evals)]
        red, pivots = linalg.gf_rref(aug, p)
        combo = next(row[param.n:] for row in red
                     if not any(row[:param.n]) and any(row[param.n:]))
        vec = [()] * param.n
        for i, c in enumerate(combo):
            if c:
                vec = [linalg.poly_add(a, linalg.poly_scale(b, c, p), p)
                       for a, b in zip(vec, kept[i])]
        if not any(vec) or any(poly and poly[0] for poly in vec):
            raise DegenerateParametrization("saturation at (T) failed")
        shifted = [poly[1:] if poly else () for poly in vec]
        slot = next(i for i, c in enumerate(combo) if c)
        kept[slot] = [linalg.poly_trim(poly) for poly in shifted]


def flock_from_linearized(param: LinearizedParam) -> MatroidFlock:
    """The flock alpha -> column matroid over GF(p) of the shifted tangent.

    Tangents whose level-0 Jacobian already reaches the generic rank are
    used as-is; rank drops (inseparable shifts) are rescued by saturating
    the GF(p)[T] row module at (T).  A parametrization the rescue cannot
    bring to rank d is degenerate: the base point 0 is not general.
    """
    d = generic_rank(param)
    p = param.p

    def ev(alpha):
        shifted = linearized_shift(param, alpha)
        tan = linearized_tangent(shifted)
        if linalg.gf_rank(tan, p) != d:
            tan = _saturated_tangent(shifted, d)
        return matroid_from_matrix(tan, GF(p), param.ground).masks

    return MatroidFlock(param.ground, d, ev, "linearized")


# ---------------------------------------------------------------------------
# Frobenius flock windows over GF(p)

@dataclass(frozen=True)
class FrobeniusFlockWindow:
    """Tangent row spaces V_alpha over a box, as matrices over GF(p)."""
    radius: int
    p: int
    d: int
    ground: tuple
    table: dict

    def space(self, alpha):
        return self.table[tuple(alpha)]


@dataclass(frozen=True)
class FrobeniusWindowReport:
    radius: int
    ff1_checked: int = 0
    ff1_failed: int = 0
    ff2_checked: int = 0
    ff2_failed: int = 0
    violation: Optional[tuple] = None

    @property
    def ok(self) -> bool:
        return self.ff1_failed == 0 and self.ff2_failed == 0

    def __bool__(self):
        return self.ok


def frobenius_window(param: LinearizedParam, radius: int) -> FrobeniusFlockWindow:
    d = generic_rank(param)
    table = {}
    for alpha in itertools.product(range(-radius, radius + 1), repeat=param.n):
        shifted = linearized_shift(param, alpha)
        tan = linearized_tangent(shifted)
        if linalg.gf_rank(tan, param.p) != d:
            tan = _saturated_tangent(shifted, d)
        table[alpha] = tan
    return FrobeniusFlockWindow(radius, param.p, d, param.ground, table)


def _space_delete(rows, i: int, p: int):
    cut = [row[:i] + row[i + 1:] for row in rows]
    return linalg.gf_row_space(cut, p)


def _space_contract(rows, i: int, p: int):
    """Row space of {w in V : w_i = 0}, coordinate i dropped."""
    M = [list(r) for r in rows]
    piv = next((r for r in range(len(M)) if M[r][i] % p), None)
    if piv is not None:
        inv = pow(M[piv][i] % p, -1, p)
        for r in range(len(M)):
            if r != piv and M[r][i] % p:
                c = (M[r][i] * inv) % p
                M[r] = [(a - c * b) % p for a, b in zip(M[r], M[piv])]
        M.pop(piv)
    cut = [row[:i] + row[i + 1:] for row in M]
    return linalg.gf_row_space(cut, p)


def validate_frobenius_window(win: FrobeniusFlockWindow,
                              box_radius: Optional[int] = None) -> FrobeniusWindowReport:
    """Check (FF1) and (FF2) on every pair of points available in the table.

    ``box_radius`` restricts the base points alpha to a smaller box (used
    when the table carries padding).
    """
    p = win.p
    n = len(win.ground)
    ff1_checked = ff1_failed = ff2_checked = ff2_failed = 0
    violation = None
    for alpha, rows in sorted(win.table.items()):
        if box_radius is not None and any(abs(a) > box_radius for a in alpha):
            continue
        for i in range(n):
            beta = tuple(a + (1 if k == i else 0) for k, a in enumerate(alpha))
            other = win.table.get(beta)
            if other is None:
                continue
            ff1_checked += 1
            left = _space_contract(rows, i, p)
            right = _space_delete(other, i, p)
            if left != right:
                ff1_failed += 1
                if violation is None:
                    violation = (alpha, win.ground[i], left, right)
        beta = tuple(a + 1 for a in alpha)
        other = win.table.get(beta)
        if other is not None:
            ff2_checked += 1
            left = linalg.gf_row_space(rows, p)
            right = linalg.gf_row_space(other, p)
            if left != right:
                ff2_failed += 1
                if violation is None:
                    violation = (alpha, "1", left, right)
    return FrobeniusWindowReport(win.radius, ff1_checked, ff1_failed,
                                 ff2_checked, ff2_failed, violation)


def check_frobenius_axioms(param: LinearizedParam, radius: int) -> FrobeniusWindowReport:
    """(FF1)/(FF2) for all alpha in [-radius, radius]^E (table padded by 1)."""
    win = frobenius_window(param, radius + 1)
    return validate_frobenius_window(win, box_radius=radius)

"""Matroid flocks: families alpha -> M_alpha verified on finite windows.

A flock is an oracle from integer vectors to matroids of fixed rank.  The
two local axioms (minor compatibility under unit steps, invariance under the
all-ones shift) are checked exhaustively over boxes; the potential g and the
valuation extracted from it give the finite description of the whole family.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import window
from .lattice import vadd
from .matroid import Matroid, bases_contract, bases_delete
from .valuation import Valuation, check_valuation_axioms, optimal_masks


class ExtractionError(RuntimeError):
    """Round-trip verification failed; carries the cutoff-hitting subsets."""

    def __init__(self, message, cutoff_hits=()):
        super().__init__(message)
        self.cutoff_hits = tuple(cutoff_hits)


class MatroidFlock:
    """An oracle alpha in Z^E -> matroid of rank d on E, memoized per alpha."""

    def __init__(self, ground, d: int, masks_eval: Callable[[tuple], frozenset],
                 source: str, valuation: Optional[Valuation] = None):
        self.ground = tuple(ground)
        self.d = int(d)
        self.source = source
        self.valuation = valuation
        self._masks_eval = masks_eval
        self._memo: dict[tuple, frozenset[int]] = {}

    def masks_at(self, alpha) -> frozenset[int]:
        alpha = tuple(int(a) for a in alpha)
        if len(alpha) != len(self.ground):
            raise ValueError("alpha has the wrong length")
        got = self._memo.get(alpha)
        if got is None:
            got = self._masks_eval(alpha)
            self._memo[alpha] = got
        return got

    def matroid_at(self, alpha) -> Matroid:
        return Matroid(self.ground, self.masks_at(alpha))

    def rank_at(self, alpha, subset_mask: int) -> int:
        return max((b & subset_mask).bit_count() for b in self.masks_at(alpha))

    def __repr__(self):
        return f"MatroidFlock(source={self.source!r}, n={len(self.ground)}, d={self.d})"


def flock_from_valuation(nu: Valuation) -> MatroidFlock:
    """The flock alpha -> M^nu_alpha."""
    if not nu.finite:
        raise ValueError("valuation violates (V1): no finite value")
    return MatroidFlock(nu.ground, nu.d, lambda a: optimal_masks(nu, a),
                        "valuation", valuation=nu)


def constant_flock(M: Matroid) -> MatroidFlock:
    return MatroidFlock(M.ground, M.d, lambda a: M.masks, "constant")


def explicit_flock(table: dict, ground, d: int) -> MatroidFlock:
    """A flock given by a finite table alpha -> Matroid (tests and JSON input).

    Evaluation outside the table raises.
    """
    tbl = {}
    for alpha, M in table.items():
        alpha = tuple(int(a) for a in alpha)
        if M.ground != tuple(ground) or M.d != d:
            raise ValueError("table entry with mismatched ground set or rank")
        tbl[alpha] = M.masks

    def ev(alpha):
        try:
            return tbl[alpha]
        except KeyError:
            raise ValueError(f"alpha {alpha} outside the explicit window") from None
    return MatroidFlock(ground, d, ev, "explicit")


def oracle_flock(ground, d: int, fn: Callable[[tuple], Matroid],
                 source: str = "oracle") -> MatroidFlock:
    return MatroidFlock(ground, d, lambda a: fn(a).masks, source)


# ---------------------------------------------------------------------------
# window evaluation

def window_ids(flock: MatroidFlock, radius: int):
    """Matroid identities over the box [-radius, radius]^E.

    Returns (grid, table): an int array indexed by alpha + radius per axis,
    and the list mapping ids to basis-mask families.  Valuation-backed flocks
    are scored vectorized; anything else walks the oracle.
    """
    n = len(flock.ground)
    L = 2 * radius + 1
    if flock.valuation is not None:
        items = flock.valuation.finite_items()
        points = window.box_array([-radius] * n, [radius] * n)
        ids = window.score_ids(items, n, points)
        uniq, inverse = np.unique(ids, return_inverse=True)
        table = [window.decode_code(int(c), items) for c in uniq]
        grid = inverse.reshape((L,) * n).astype(np.int32)
        return grid, table
    table: list[frozenset[int]] = []
    intern: dict[frozenset[int], int] = {}
    grid = np.empty((L,) * n, dtype=np.int32)
    for idx in np.ndindex(*(L,) * n):
        masks = flock.masks_at(tuple(k - radius for k in idx))
        got = intern.get(masks)
        if got is None:
            got = len(table)
            intern[masks] = got
            table.append(masks)
        grid[idx] = got
    return grid, table


# ---------------------------------------------------------------------------
# axiom checking

@dataclass(frozen=True)
class FlockViolation:
    alpha: tuple
    move: object          # an element label, "1", or a tuple of labels
    left: Matroid
    right: Matroid


@dataclass(frozen=True)
class FlockWindowReport:
    radius: int
    mf1_checked: int = 0
    mf1_failed: int = 0
    mf2_checked: int = 0
    mf2_failed: int = 0
    set_checked: int = 0
    set_failed: int = 0
    violation: Optional[FlockViolation] = None

    @property
    def ok(self) -> bool:
        return self.mf1_failed == 0 and self.mf2_failed == 0 and self.set_failed == 0

    def __bool__(self):
        return self.ok


def check_flock_axioms(flock: MatroidFlock, radius: int,
                       check_sets: bool = False) -> FlockWindowReport:
    """Verify the minor axiom and shift invariance over [-radius, radius]^E.

    ``check_sets`` additionally verifies the set version M_a / I = M_{a+e_I} \\ I
    for every nonempty I.  Violations are data, not errors.
    """
    if radius < 1:
        raise ValueError("radius must be at least 1")
    n = len(flock.ground)
    pad = radius + 1
    grid, table = window_ids(flock, pad)
    L = 2 * pad + 1
    K = len(table)
    inner = tuple(slice(1, L - 1) for _ in range(n))
    A = grid[inner].astype(np.int64)

    mf1_checked = mf1_failed = mf2_checked = mf2_failed = 0
    set_checked = set_failed = 0
    violation = None

    def alpha_at(idx):
        return tuple(int(k) - radius for k in idx)

    def first_bad(pairs, code):
        return alpha_at(tuple(int(x) for x in np.argwhere(pairs == code)[0]))

    def shifted(axes) -> np.ndarray:
        slices = [slice(1, L - 1)] * n
        for ax in axes:
            slices[ax] = slice(2, L)
        return grid[tuple(slices)]

    # (MF1): M_alpha / i = M_{alpha + e_i} \ i
    for axis in range(n):
        B = shifted([axis])
        pairs = A * K + B
        mf1_checked += pairs.size
        bit = 1 << axis
        e = flock.ground[axis]
        for code in np.unique(pairs):
            ida, idb = divmod(int(code), K)
            Sa, Sb = table[ida], table[idb]
            if bases_contract(Sa, bit) != bases_delete(Sb, bit):
                mf1_failed += int(np.count_nonzero(pairs == code))
                if violation is None:
                    left = Matroid(flock.ground, Sa).minor(contract=[e])
                    right = Matroid(flock.ground, Sb).minor(delete=[e])
                    violation = FlockViolation(first_bad(pairs, code), e, left, right)

    # (MF2): M_alpha = M_{alpha + 1}
    B = shifted(range(n))
    pairs = A * K + B
    mf2_checked = pairs.size
    mism = A != B
    mf2_failed = int(np.count_nonzero(mism))
    if mf2_failed and violation is None:
        idx = tuple(int(x) for x in np.argwhere(mism)[0])
        ida, idb = int(A[idx]), int(B[idx])
        violation = FlockViolation(
            alpha_at(idx), "1",
            Matroid(flock.ground, table[ida]), Matroid(flock.ground, table[idb]))

    # set version of (MF1), for every nonempty I
    if check_sets:
        for r in range(1, n + 1):
            for combo in itertools.combinations(range(n), r):
                B = shifted(combo)
                pairs = A * K + B
                set_checked += pairs.size
                cmask = sum(1 << i for i in combo)
                labels = tuple(flock.ground[i] for i in combo)
                for code in np.unique(pairs):
                    ida, idb = divmod(int(code), K)
                    Sa, Sb = table[ida], table[idb]
                    if bases_contract(Sa, cmask) != bases_delete(Sb, cmask):
                        set_failed += int(np.count_nonzero(pairs == code))
                        if violation is None:
                            violation = FlockViolation(
                                first_bad(pairs, code), labels,
                                Matroid(flock.ground, Sa), Matroid(flock.ground, Sb))

    return FlockWindowReport(radius, mf1_checked, mf1_failed, mf2_checked,
                             mf2_failed, set_checked, set_failed, violation)


# ---------------------------------------------------------------------------
# the potential g

def g_M(flock: MatroidFlock, alpha, check_path: bool = False) -> int:
    """The unique potential with g(0) = 0 and g(a + e_I) = g(a) + r_a(I).

    Computed along the canonical staircase of threshold sets of
    alpha - (min alpha) * 1, then corrected using 1-affinity with slope d.
    Path independence holds for genuine flocks; ``check_path`` re-derives the
    value along per-coordinate unit steps and asserts agreement.
    """
    alpha = tuple(int(a) for a in alpha)
    n = len(flock.ground)
    if len(alpha) != n:
        raise ValueError("alpha has the wrong length")
    m = min(alpha, default=0)
    beta = tuple(a - m for a in alpha)
    g = flock.d * m
    cur = (0,) * n
    for t in range(1, max(beta, default=0) + 1):
        step_mask = sum(1 << i for i in range(n) if beta[i] >= t)
        g += flock.rank_at(cur, step_mask)
        cur = tuple(c + (1 if beta[i] >= t else 0) for i, c in enumerate(cur))
    if check_path:
        g2 = flock.d * m
        cur = (0,) * n
        for i in range(n):
            for _ in range(beta[i]):
                g2 += flock.rank_at(cur, 1 << i)
                cur = vadd(cur, tuple(1 if k == i else 0 for k in range(n)))
        if g2 != g:
            raise AssertionError(f"path dependence at {alpha}: {g} != {g2}")
    return g


# ---------------------------------------------------------------------------
# valuation extraction

def _default_cutoff(flock: MatroidFlock) -> int:
    if flock.valuation is not None:
        # h(0) = nu(B) <= spread along the k*e_B walk, so spread+1 suffices
        return flock.valuation.spread + 1
    return 16


def extract_valuation(flock: MatroidFlock, cutoff: Optional[int] = None,
                      verify_radius: Optional[int] = None) -> Valuation:
    """Recover the valuation nu with M^nu_alpha = flock(alpha).

    For each d-subset B, walk alpha = k * e_B until B is a basis of
    M_alpha; then nu(B) = k*d - g(k*e_B).  Subsets that never become bases
    within the cutoff get nu(B) = ∞.  Algebraic-source flocks are round-trip
    verified on a window (default radius 2); a mismatch raises
    ExtractionError listing the subsets that hit the cutoff.
    """
    n = len(flock.ground)
    if cutoff is None:
        cutoff = _default_cutoff(flock)
    if cutoff < 1:
        raise ValueError("cutoff must be at least 1")
    if verify_radius is None and flock.source not in ("valuation",):
        verify_radius = 2

    finite: dict[int, int] = {}
    cutoff_hits = []
    d = flock.d
    for combo in itertools.combinations(range(n), d):
        bmask = sum(1 << i for i in combo)
        g = 0
        value = None
        for k in range(cutoff + 1):
            point = tuple(k if i in combo else 0 for i in range(n))
            masks = flock.masks_at(point)
            if bmask in masks:
                value = k * d - g
                break
            g += max((b & bmask).bit_count() for b in masks)
        if value is None:
            cutoff_hits.append(tuple(flock.ground[i] for i in combo))
        else:
            finite[bmask] = value

    nu = Valuation(flock.ground, d, finite)
    check = check_valuation_axioms(nu)
    if not check.ok:
        raise ExtractionError(
            f"extracted map violates ({check.kind}) at {check.witness}", cutoff_hits)
    if verify_radius:
        if flock.valuation is not None:
            bad = _window_mismatch(nu, flock.valuation, verify_radius)
        else:
            bad = next(
                (alpha for alpha in itertools.product(
                    range(-verify_radius, verify_radius + 1), repeat=n)
                 if optimal_masks(nu, alpha) != flock.masks_at(alpha)),
                None)
        if bad is not None:
            raise ExtractionError(
                f"round-trip mismatch at alpha={bad}; "
                f"cutoff {cutoff} may be too small", cutoff_hits)
    return nu


def _window_mismatch(nu_a: Valuation, nu_b: Valuation, radius: int):
    """First alpha in the box where the two induced matroids differ, or None."""
    n = len(nu_a.ground)
    points = window.box_array([-radius] * n, [radius] * n)
    items_a = nu_a.finite_items()
    items_b = nu_b.finite_items()
    ua, inva = np.unique(window.score_ids(items_a, n, points), return_inverse=True)
    ub, invb = np.unique(window.score_ids(items_b, n, points), return_inverse=True)
    combined = inva.astype(np.int64) * len(ub) + invb
    for code in np.unique(combined):
        ia, ib = divmod(int(code), len(ub))
        if window.decode_code(int(ua[ia]), items_a) != \
           window.decode_code(int(ub[ib]), items_b):
            idx = int(np.argwhere(combined == code)[0])
            return tuple(int(x) for x in points[idx])
    return None

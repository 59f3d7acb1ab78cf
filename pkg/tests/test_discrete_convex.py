"""Window-based M/L-convexity, duality, and the local optimality test."""

import itertools

import pytest

import matflock as mf
from matflock.discrete_convex import WindowFunction

from conftest import random_valid_valuation, u24_valuation


def box(lo, hi):
    return itertools.product(*(range(l, h + 1) for l, h in zip(lo, hi)))


# ---------------------------------------------------------------------------
# L-convexity

def test_lconvex_max():
    g = WindowFunction(2, (-2, -2), (2, 2),
                       {p: max(p) for p in box((-2, -2), (2, 2))})
    rep = mf.check_lconvex(g)
    assert rep.ok and rep.r == 1
    assert rep.shift_skipped > 0 and rep.submodular_checked == 25 * 24 // 2


def test_lconvex_product_fails():
    g = WindowFunction(2, (0, 0), (2, 2),
                       {p: p[0] * p[1] for p in box((0, 0), (2, 2))})
    rep = mf.check_lconvex(g)
    assert not rep.ok
    x, y = rep.witness
    assert g(x) + g(y) < g(tuple(map(max, x, y))) + g(tuple(map(min, x, y)))


def test_lconvex_constant():
    g = WindowFunction(2, (-1, -1), (1, 1), {p: 5 for p in box((-1, -1), (1, 1))})
    rep = mf.check_lconvex(g)
    assert rep.ok and rep.r == 0


def test_lconvex_inconsistent_shift():
    vals = {p: 0 for p in box((-1, -1), (1, 1))}
    vals[(1, 1)] = 3
    rep = mf.check_lconvex(WindowFunction(2, (-1, -1), (1, 1), vals))
    assert not rep.ok


# ---------------------------------------------------------------------------
# M-convexity

def test_mconvex_uniform_points():
    u24 = mf.uniform_matroid(2, 4)
    f = WindowFunction(4, (0,) * 4, (1,) * 4,
                       {tuple(1 if e in B else 0 for e in u24.ground): 0
                        for B in u24.bases})
    assert mf.check_mconvex(f).ok


def test_mconvex_valuation_points():
    assert mf.check_mconvex(mf.valuation_point_function(u24_valuation())).ok


def test_mconvex_gap_violation():
    f = WindowFunction(2, (0, 0), (2, 2), {(2, 0): 0, (0, 2): 0})
    rep = mf.check_mconvex(f)
    assert not rep.ok
    x, y, i = rep.witness
    assert {x, y} == {(2, 0), (0, 2)}


# ---------------------------------------------------------------------------
# Fenchel duality

def test_fenchel_two_point_sup():
    h = WindowFunction(2, (0, 0), (1, 1), {(1, 0): 0, (0, 1): 0})
    dual = mf.fenchel_dual(h, (-3, -3), (3, 3))
    assert all(dual(x) == max(x) for x in box((-3, -3), (3, 3)))


def test_fenchel_matches_g_value(rng):
    cases = [u24_valuation()] + [random_valid_valuation(rng, 4, 2) for _ in range(4)]
    for nu in cases:
        f = mf.valuation_point_function(nu)
        dual = mf.fenchel_dual(f, (-3,) * 4, (3,) * 4)
        for a in box((-3,) * 4, (3,) * 4):
            assert dual(a) == mf.g_value(nu, a)


def test_double_dual_restores_on_domain(rng):
    for nu in [u24_valuation(), random_valid_valuation(rng, 4, 2)]:
        f = mf.valuation_point_function(nu)
        g = mf.fenchel_dual(f, (-3,) * 4, (3,) * 4)
        back = mf.fenchel_dual(g, (0,) * 4, (1,) * 4)
        for pt in f.domain():
            assert back(pt) == f(pt)
        assert mf.check_mconvex(f).ok
        assert mf.check_lconvex(g).ok


# ---------------------------------------------------------------------------
# local optimality (the 2^n + 1 evaluation criterion)

def test_minimizer_examples():
    assert mf.lconvex_is_minimizer(lambda a: max(a) - a[0], (0, 0), 2)
    assert not mf.lconvex_is_minimizer(lambda a: max(a), (0, 0), 2)
    assert mf.lconvex_is_minimizer(lambda a: 7, (3, -2), 2)


def test_minimizer_rejects_non_lconvex():
    with pytest.raises(ValueError):
        mf.lconvex_is_minimizer(lambda a: -(max(a) - min(a)), (0, 0), 2)


def test_minimizer_agrees_with_exhaustive_search(rng):
    # G(a) = g(a) - e_B . a for a support basis B: slope-0 L-convex oracles
    for _ in range(25):
        n = rng.choice([2, 3])
        nu = random_valid_valuation(rng, n, rng.randint(1, min(2, n)))
        basis = rng.choice(sorted(nu.finite))
        idx = [i for i in range(n) if basis >> i & 1]

        def G(a):
            return mf.g_value(nu, a) - sum(a[i] for i in idx)

        x = tuple(rng.randint(-2, 2) for _ in range(n))
        exhaustive = min(
            G(tuple(x[i] + d[i] for i in range(n)))
            for d in box((-3,) * n, (3,) * n))
        assert mf.lconvex_is_minimizer(G, x, n) == (G(x) == exhaustive)

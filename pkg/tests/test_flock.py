"""Flock axioms, the potential, extraction, and the window properties."""

import itertools

import pytest

import matflock as mf
from matflock.flock import window_ids

import flockprops
from conftest import (
    example_param,
    random_valid_valuation,
    toric_example,
    two_element_valuation,
    u24_valuation,
)


# ---------------------------------------------------------------------------
# axiom checking

def test_axioms_u24_weights_pass():
    rep = mf.check_flock_axioms(mf.flock_from_valuation(u24_valuation()), 2)
    assert rep.ok
    assert rep.mf1_checked == 4 * 5 ** 4 and rep.mf2_checked == 5 ** 4


def test_axioms_constant_u22_passes():
    M = mf.Matroid.from_bases([1, 2], [[1, 2]])
    assert mf.check_flock_axioms(mf.constant_flock(M), 2).ok


def test_axioms_constant_u24_fails_mf1():
    rep = mf.check_flock_axioms(mf.constant_flock(mf.uniform_matroid(2, 4)), 1)
    assert not rep.ok and rep.mf1_failed > 0
    v = rep.violation
    assert v is not None and v.move in (1, 2, 3, 4)
    # U24 / i has rank 1 on three elements; U24 \ i is U(2,3)
    assert {v.left.d, v.right.d} == {1, 2}


def test_axioms_corrupted_explicit_table():
    nu = two_element_valuation()
    flock = mf.flock_from_valuation(nu)
    table = {}
    for k in range(-3, 4):
        for l in range(-3, 4):
            table[(k, l)] = flock.matroid_at((k, l))
    table[(1, 0)] = mf.Matroid.from_bases([1, 2], [[2]])  # should be {1}
    bad = mf.explicit_flock(table, (1, 2), 1)
    rep = mf.check_flock_axioms(bad, 2)
    assert not rep.ok and rep.violation is not None


def test_axioms_set_version():
    rep = mf.check_flock_axioms(
        mf.flock_from_valuation(u24_valuation()), 2, check_sets=True)
    assert rep.ok and rep.set_checked == 15 * 5 ** 4 and rep.set_failed == 0


# ---------------------------------------------------------------------------
# the potential g

def test_g_zero_and_one():
    for nu in (u24_valuation(), two_element_valuation()):
        flock = mf.flock_from_valuation(nu)
        n = len(nu.ground)
        assert mf.g_M(flock, (0,) * n) == 0
        assert mf.g_M(flock, (1,) * n) == nu.d
        assert mf.g_M(flock, (-1,) * n) == -nu.d


def test_g_single_step_is_rank():
    nu = u24_valuation()
    flock = mf.flock_from_valuation(nu)
    for I in range(1, 16):
        alpha = tuple(1 if I >> i & 1 else 0 for i in range(4))
        assert mf.g_M(flock, alpha) == flock.rank_at((0,) * 4, I)


def test_g_path_independence_and_gauge(rng):
    nu = u24_valuation()
    flock = mf.flock_from_valuation(nu)
    base = mf.g_value(nu, (0,) * 4)
    for _ in range(30):
        alpha = tuple(rng.randint(-4, 4) for _ in range(4))
        g = mf.g_M(flock, alpha, check_path=True)
        # the flock potential is the normalized gauge of the valuation
        assert g == mf.g_value(nu, alpha) - base


def test_g_submodular_on_window(rng):
    flock = mf.flock_from_valuation(u24_valuation())
    for _ in range(60):
        a = tuple(rng.randint(-3, 3) for _ in range(4))
        b = tuple(rng.randint(-3, 3) for _ in range(4))
        join = tuple(map(max, a, b))
        meet = tuple(map(min, a, b))
        assert mf.g_M(flock, a) + mf.g_M(flock, b) >= \
            mf.g_M(flock, join) + mf.g_M(flock, meet)


# ---------------------------------------------------------------------------
# extraction

def test_extract_u24_weights_exact():
    nu = u24_valuation()
    assert mf.extract_valuation(mf.flock_from_valuation(nu), cutoff=8) == nu


def test_extract_two_element_example():
    nu = mf.extract_valuation(mf.flock_from_valuation(two_element_valuation()))
    assert nu.value([1]) == 0 and nu.value([2]) == 0


def test_extract_linearized_example():
    nu = mf.extract_valuation(mf.flock_from_linearized(example_param(2, 2)))
    assert nu.value([1, 4]) == 2
    assert all(nu.value(B) == 0
               for B in [(1, 2), (1, 3), (2, 3), (2, 4), (3, 4)])


def test_extract_detects_infinite_values():
    # a loop element: every pair through 4 stays infinite
    nu = mf.Valuation.from_values(
        [1, 2, 3, 4], 2, {(1, 2): 0, (1, 3): 0, (2, 3): 1})
    got = mf.extract_valuation(mf.flock_from_valuation(nu))
    assert got == nu
    assert got.value([1, 4]) == mf.INF


def test_extract_cutoff_too_small_raises():
    nu = mf.Valuation.from_values([1, 2], 1, {(1,): 0, (2,): 3})
    flock = mf.flock_from_valuation(nu)
    flock = mf.MatroidFlock(flock.ground, flock.d, flock._masks_eval, "oracle")
    with pytest.raises(mf.ExtractionError):
        mf.extract_valuation(flock, cutoff=2, verify_radius=3)


def test_roundtrip_random_sample(rng):
    for _ in range(25):
        n = rng.randint(2, 5)
        d = rng.randint(1, min(3, n))
        nu = random_valid_valuation(rng, n, d)
        flock = mf.flock_from_valuation(nu)
        assert mf.extract_valuation(flock) == nu
        assert mf.check_flock_axioms(flock, 2).ok


def test_window_ids_generic_matches_vectorized():
    nu = u24_valuation()
    fast = mf.flock_from_valuation(nu)
    slow = mf.oracle_flock(nu.ground, nu.d, lambda a: mf.matroid_at(nu, a))
    gf, tf = window_ids(fast, 2)
    gs, ts = window_ids(slow, 2)
    assert gf.shape == gs.shape
    import numpy as np
    for idx in np.ndindex(*gf.shape):
        assert tf[gf[idx]] == ts[gs[idx]]


def test_score_path_beyond_word_width(rng):
    # more than 63 finite bases forces the byte-packed argmax encoding
    import numpy as np
    from matflock import window
    n, d = 9, 4
    subsets = list(itertools.combinations(range(n), d))
    items = [(sum(1 << i for i in c), rng.randint(0, 2)) for c in subsets]
    assert len(items) > 63
    points = np.array([[rng.randint(-2, 2) for _ in range(n)] for _ in range(40)])
    ids = window.score_ids(items, n, points)
    for row, code in zip(points, ids):
        best = None
        opt = set()
        for mask, val in items:
            s = sum(int(row[i]) for i in range(n) if mask >> i & 1) - val
            if best is None or s > best:
                best, opt = s, {mask}
            elif s == best:
                opt.add(mask)
        assert window.decode_code(int(code), items) == frozenset(opt)


# ---------------------------------------------------------------------------
# flock sources

def test_flock_from_valuation_oracle():
    nu = u24_valuation()
    flock = mf.flock_from_valuation(nu)
    assert flock.matroid_at((0,) * 4) == mf.matroid_at(nu, (0,) * 4)


def test_two_element_leaders():
    flock = mf.flock_from_valuation(two_element_valuation())
    distinct = {flock.masks_at((k, l)) for k in range(-3, 4) for l in range(-3, 4)}
    assert len(distinct) == 3


def test_explicit_flock_outside_window():
    M = mf.Matroid.from_bases([1, 2], [[1], [2]])
    flock = mf.explicit_flock({(0, 0): M}, (1, 2), 1)
    with pytest.raises(ValueError):
        flock.masks_at((5, 5))


# ---------------------------------------------------------------------------
# window property suites (small cases; acceptance runs the full matrix)

def test_property_suite_u24(rng):
    nu = u24_valuation()
    flockprops.run_property_suite(
        mf.flock_from_valuation(nu), nu.support_masks, rng, radius=2)


def test_property_suite_two_element(rng):
    nu = two_element_valuation()
    flockprops.run_property_suite(
        mf.flock_from_valuation(nu), nu.support_masks, rng, radius=3)


def test_property_suite_toric(rng):
    rep = toric_example(2)
    nu = mf.lindstrom_toric(rep)
    flockprops.run_property_suite(
        mf.flock_from_toric(rep), nu.support_masks, rng, radius=2)

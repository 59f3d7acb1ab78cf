"""Vectorized scoring of valuation-induced matroids over lattice windows.

The optimal-basis set at a point alpha is the argmax of e_B . alpha - nu(B)
over the finite-valued d-subsets.  Encoding each argmax set as a bit mask
over the finite-basis list lets whole windows be scanned with a couple of
numpy operations; scores stay exact because all values are small integers
represented in float64.
"""

from __future__ import annotations

import numpy as np

_CHUNK = 1 << 16


def score_ids(finite_items, n: int, points: np.ndarray) -> np.ndarray:
    """Argmax-set codes for each lattice point.

    ``finite_items`` is a list of (basis_mask, value); ``points`` is an
    (N, n) int array.  Returns an (N,) array of codes, where bit j of a code
    says basis j is optimal.  Requires at most 63 finite bases; larger
    families fall back to a Python object-array path.
    """
    m = len(finite_items)
    if m == 0:
        raise ValueError("valuation has no finite values")
    EB = np.zeros((m, n), dtype=np.float64)
    vals = np.empty(m, dtype=np.float64)
    for k, (mask, val) in enumerate(finite_items):
        vals[k] = val
        for i in range(n):
            if mask >> i & 1:
                EB[k, i] = 1.0
    if m <= 63:
        pow2 = (np.int64(1) << np.arange(m, dtype=np.int64))
        out = np.empty(len(points), dtype=np.int64)
    else:
        out = np.empty(len(points), dtype=object)
    for start in range(0, len(points), _CHUNK):
        chunk = points[start:start + _CHUNK].astype(np.float64)
        scores = chunk @ EB.T - vals
        best = scores.max(axis=1)
        opt = scores == best[:, None]
        if m <= 63:
            out[start:start + _CHUNK] = opt @ pow2
        else:
            packed = np.packbits(opt, axis=1, bitorder="little")
            out[start:start + _CHUNK] = [
                int.from_bytes(row.tobytes(), "little") for row in packed
            ]
    return out


def decode_code(code: int, finite_items) -> frozenset[int]:
    """Translate an argmax code back into the set of optimal basis masks."""
    return frozenset(mask for k, (mask, _) in enumerate(finite_items) if code >> k & 1)


def box_array(lo, hi) -> np.ndarray:
    """All lattice points of [lo, hi] as an (N, n) int array, lex order."""
    axes = [np.arange(l, h + 1) for l, h in zip(lo, hi)]
    grids = np.meshgrid(*axes, indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1)


def iter_box_chunks(lo, hi, chunk: int = _CHUNK):
    """Lattice points of [lo, hi] in lex order, yielded as (M, n) arrays.

    Memory stays bounded for windows too large to materialize whole.
    """
    import itertools

    it = itertools.product(*(range(l, h + 1) for l, h in zip(lo, hi)))
    while True:
        block = list(itertools.islice(it, chunk))
        if not block:
            return
        yield np.array(block, dtype=np.int64)

"""Mod-p dense row reduction, numpy implementation.

This is the fallback backend; `k3lab._kernels._native` (Cython) implements
the same three entry points.  Reduced row echelon form is canonical for a
given row space, so both backends return identical arrays and the rest of
the package never needs to know which one is loaded.

Matrices are C-contiguous int64 arrays with entries in [0, p).  Matrix
products route through float64 BLAS when the partial sums provably fit in
the 53-bit mantissa, else exact int64 matmul; either way results are exact.
"""

from __future__ import annotations

import numpy as np

_RREF_BASE = 128


def _matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    inner = a.shape[1]
    if inner == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    if (p - 1) * (p - 1) * inner < 2**53:
        c = a.astype(np.float64) @ b.astype(np.float64)
        return c.astype(np.int64) % p
    # int64 is exact here for p < 2^16 and inner < 2^31
    return (a @ b) % p


def _reduce_vs(rows: np.ndarray, r: np.ndarray, pivots: np.ndarray,
               p: int) -> np.ndarray:
    if r.shape[0] == 0 or rows.shape[0] == 0:
        return rows % p
    coeff = rows[:, pivots]
    return (rows - _matmul_mod(coeff, r, p)) % p


def _rref_block(rows: np.ndarray, p: int):
    """RREF of a small block by column-at-a-time elimination."""
    rows = rows % p
    m, n = rows.shape
    done_rows = []
    done_pivots = []
    alive = rows
    while alive.shape[0]:
        nz = alive != 0
        has = nz.any(axis=1)
        alive = alive[has]
        nz = nz[has]
        if alive.shape[0] == 0:
            break
        leads = nz.argmax(axis=1)
        col = int(leads.min())
        i = int(np.nonzero(leads == col)[0][0])
        piv = alive[i].copy()
        inv = pow(int(piv[col]), p - 2, p)
        piv = (piv * inv) % p
        alive = np.delete(alive, i, axis=0)
        if alive.shape[0]:
            c = alive[:, col]
            alive = (alive - np.outer(c, piv)) % p
        for t in range(len(done_rows)):
            ct = int(done_rows[t][col])
            if ct:
                done_rows[t] = (done_rows[t] - ct * piv) % p
        done_rows.append(piv)
        done_pivots.append(col)
    if not done_rows:
        return (np.zeros((0, n), dtype=np.int64),
                np.zeros((0,), dtype=np.int64))
    r = np.array(done_rows, dtype=np.int64)
    pv = np.array(done_pivots, dtype=np.int64)
    order = np.argsort(pv)
    return (np.ascontiguousarray(r[order]), pv[order])


def _merge(r1, p1, r2, p2):
    n = r1.shape[1] if r1.shape[0] else r2.shape[1]
    r = np.vstack([r1, r2]) if r1.shape[0] and r2.shape[0] else (
        r1 if r1.shape[0] else r2)
    pv = np.concatenate([p1, p2])
    if r.shape[0] == 0:
        return (np.zeros((0, n), dtype=np.int64),
                np.zeros((0,), dtype=np.int64))
    order = np.argsort(pv)
    return (np.ascontiguousarray(r[order]), pv[order])


def _rref_rows(rows: np.ndarray, p: int):
    m = rows.shape[0]
    if m <= _RREF_BASE:
        return _rref_block(rows, p)
    half = m // 2
    r1, p1 = _rref_rows(rows[:half], p)
    bot = _reduce_vs(rows[half:], r1, p1, p)
    r2, p2 = _rref_rows(bot, p)
    if r2.shape[0]:
        r1 = _reduce_vs(r1, r2, p2, p)
    return _merge(r1, p1, r2, p2)


def rref(rows, p: int):
    """Canonical reduced row echelon form mod p.

    Returns (r, pivots): r has one row per pivot, sorted by pivot column,
    each pivot entry 1 with zeros above and below.
    """
    rows = np.ascontiguousarray(np.asarray(rows, dtype=np.int64)) % p
    if rows.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    return _rref_rows(rows, p)


def absorb(r, pivots, rows, p: int):
    """Extend an existing RREF (r, pivots) with new rows; returns new RREF."""
    r = np.asarray(r, dtype=np.int64)
    pivots = np.asarray(pivots, dtype=np.int64)
    rows = np.ascontiguousarray(np.asarray(rows, dtype=np.int64)) % p
    red = _reduce_vs(rows, r, pivots, p)
    r2, p2 = _rref_rows(red, p)
    if r2.shape[0] and r.shape[0]:
        r = _reduce_vs(r, r2, p2, p)
    return _merge(r, pivots, r2, p2)


def eval_quadrics(quads, pts, p: int):
    """Evaluate quadratic forms at many points.

    quads: (m, K, K) coefficient matrices (x^T Q x); pts: (N, K) points.
    Returns (N, m) values mod p.
    """
    quads = np.asarray(quads, dtype=np.int64) % p
    pts = np.ascontiguousarray(np.asarray(pts, dtype=np.int64)) % p
    n_pts = pts.shape[0]
    m = quads.shape[0]
    out = np.empty((n_pts, m), dtype=np.int64)
    for i in range(m):
        y = _matmul_mod(pts, quads[i], p)
        out[:, i] = (y * pts).sum(axis=1) % p
    return out

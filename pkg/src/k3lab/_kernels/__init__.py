"""Mod-p linear algebra kernels with backend selection.

At import time the compiled extension is preferred; the numpy fallback is
used when the extension is missing or K3LAB_NO_NATIVE=1 is set.  Both
backends compute the canonical reduced row echelon form, so results are
bit-identical and callers never branch on the backend.

Derived helpers (rank, nullspace, solve) are built here on top of the
backend primitives.
"""

from __future__ import annotations

import os

import numpy as np

from . import fallback

if os.environ.get("K3LAB_NO_NATIVE") == "1":
    _native = None
else:
    try:
        from . import _native  # type: ignore[attr-defined]
    except ImportError:
        _native = None

BACKEND = "native" if _native is not None else "fallback"
_impl = _native if _native is not None else fallback


def rref(rows, p):
    """Canonical RREF mod p: returns (r, pivots)."""
    rows = np.asarray(rows, dtype=np.int64)
    return _impl.rref(rows, p)


def absorb(r, pivots, rows, p):
    """Extend an existing RREF with extra rows: returns (r, pivots)."""
    return _impl.absorb(r, pivots, rows, p)


def eval_quadrics(quads, pts, p):
    """Evaluate quadratic forms x^T Q x at point rows: returns (N, m)."""
    return _impl.eval_quadrics(quads, pts, p)


def rank(rows, p) -> int:
    r, _ = rref(rows, p)
    return int(r.shape[0])


def nullspace(rows, p):
    """Canonical basis of the right kernel mod p, one row per basis vector.

    Basis vectors are indexed by free columns in ascending order; the
    vector for free column f has a 1 at f and -R[:, f] at the pivots.
    """
    rows = np.asarray(rows, dtype=np.int64)
    n = rows.shape[1]
    r, pivots = rref(rows, p)
    pivset = set(int(c) for c in pivots)
    free = [j for j in range(n) if j not in pivset]
    out = np.zeros((len(free), n), dtype=np.int64)
    for i, f in enumerate(free):
        out[i, f] = 1
        for t in range(r.shape[0]):
            c = int(r[t, f])
            if c:
                out[i, int(pivots[t])] = (p - c) % p
    return out


def solve(a, b, p):
    """One solution x of a @ x = b mod p, or None if inconsistent.

    b may be a vector or a matrix of stacked right-hand-side columns.
    """
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    vec = b.ndim == 1
    if vec:
        b = b[:, None]
    aug = np.hstack([a % p, b % p])
    r, pivots = rref(aug, p)
    n = a.shape[1]
    if any(int(c) >= n for c in pivots):
        return None
    x = np.zeros((n, b.shape[1]), dtype=np.int64)
    for t in range(r.shape[0]):
        x[int(pivots[t])] = r[t, n:]
    return x[:, 0] if vec else x

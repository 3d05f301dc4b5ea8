"""Backend equivalence for the mod-p kernels.

The compiled extension and the numpy fallback must produce identical
bytes for every primitive, since reports are replayed across machines
that may or may not have the extension built.
"""

import os
import random
import subprocess
import sys

import numpy as np
import pytest

from k3lab import _kernels
from k3lab._kernels import fallback


def _random_matrix(rng, rows, cols, p):
    return np.array([[rng.randrange(p) for _ in range(cols)]
                     for _ in range(rows)], dtype=np.int64)


def test_backend_reports_itself():
    assert _kernels.BACKEND in ("native", "fallback")


@pytest.mark.parametrize("p", [2, 3, 7, 13, 101])
def test_rref_matches_fallback(p):
    rng = random.Random(1000 + p)
    for trial in range(40):
        rows = _random_matrix(rng, rng.randrange(1, 9),
                              rng.randrange(1, 9), p)
        r1, piv1 = _kernels.rref(rows.copy(), p)
        r2, piv2 = fallback.rref(rows.copy(), p)
        assert np.array_equal(r1, r2), f"rref diverged at trial {trial}"
        assert np.array_equal(piv1, piv2)


def test_rref_is_canonical_reduced_form():
    rng = random.Random(7)
    p = 11
    for _ in range(30):
        rows = _random_matrix(rng, 6, 5, p)
        r, pivots = _kernels.rref(rows, p)
        for t, c in enumerate(pivots):
            col = r[:, int(c)]
            assert col[t] == 1
            assert all(int(col[s]) == 0 for s in range(len(pivots))
                       if s != t)


def test_absorb_agrees_with_batch_rref():
    rng = random.Random(21)
    p = 13
    for _ in range(25):
        top = _random_matrix(rng, 3, 7, p)
        extra = _random_matrix(rng, 4, 7, p)
        r0, piv0 = _kernels.rref(top, p)
        r1, piv1 = _kernels.absorb(r0, piv0, extra, p)
        r2, piv2 = _kernels.rref(np.vstack([top, extra]), p)
        assert np.array_equal(r1, r2)
        assert np.array_equal(piv1, piv2)


def test_eval_quadrics_matches_direct_evaluation():
    rng = random.Random(33)
    p = 13
    n = 6
    quads = np.array([[[rng.randrange(p) for _ in range(n)]
                       for _ in range(n)] for _ in range(3)],
                     dtype=np.int64)
    pts = _random_matrix(rng, 50, n, p)
    got = _kernels.eval_quadrics(quads, pts, p)
    for i, x in enumerate(pts):
        for j, q in enumerate(quads):
            want = int(x @ q @ x) % p
            assert int(got[i, j]) == want


def test_nullspace_annihilates_and_has_full_rank():
    rng = random.Random(55)
    p = 7
    for _ in range(25):
        rows = _random_matrix(rng, rng.randrange(1, 6), 8, p)
        ker = _kernels.nullspace(rows, p)
        prod = (rows @ ker.T) % p
        assert not prod.any()
        assert _kernels.rank(rows, p) + ker.shape[0] == 8


def test_solve_roundtrip_and_inconsistency():
    rng = random.Random(68)
    p = 13
    for _ in range(25):
        a = _random_matrix(rng, 5, 4, p)
        x = np.array([rng.randrange(p) for _ in range(4)], dtype=np.int64)
        b = (a @ x) % p
        got = _kernels.solve(a, b, p)
        assert got is not None
        assert np.array_equal((a @ got) % p, b)
    a = np.array([[1, 0], [0, 0]], dtype=np.int64)
    assert _kernels.solve(a, np.array([0, 1], dtype=np.int64), p) is None


def test_no_native_env_selects_fallback():
    code = ("import k3lab._kernels as k; print(k.BACKEND)")
    env = dict(os.environ, K3LAB_NO_NATIVE="1")
    out = subprocess.run([sys.executable, "-c", code], env=env,
                         capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "fallback"


def test_backends_give_identical_construction_bytes():
    """A pipeline replay must not depend on the selected backend."""
    code = (
        "from k3lab.exactlin import FiniteField\n"
        "from k3lab.constructions import build_genus4, canonical_json\n"
        "print(canonical_json(build_genus4(FiniteField(7), 1).to_dict()))\n")
    native = subprocess.run([sys.executable, "-c", code],
                            capture_output=True, text=True, check=True,
                            env=dict(os.environ, K3LAB_NO_NATIVE="0"))
    pure = subprocess.run([sys.executable, "-c", code],
                          capture_output=True, text=True, check=True,
                          env=dict(os.environ, K3LAB_NO_NATIVE="1"))
    assert native.stdout == pure.stdout

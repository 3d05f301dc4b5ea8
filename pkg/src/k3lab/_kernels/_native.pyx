# cython: boundscheck=False, wraparound=False, cdivision=True
"""Native mod-p row reduction kernels.

Mirrors `k3lab._kernels.fallback` exactly: RREF is canonical for a given
row space, so both backends return identical arrays.  Entries live in
[0, p) as int64; p is an odd (or 2) prime below 2^16, so products fit
comfortably in 64 bits.
"""

import numpy as np


ctypedef long long i64


cdef inline i64 _inv_mod(i64 a, i64 p):
    cdef i64 result = 1
    cdef i64 base = a % p
    cdef i64 e = p - 2
    while e > 0:
        if e & 1:
            result = (result * base) % p
        base = (base * base) % p
        e >>= 1
    return result


def absorb(r_in, pivots_in, rows_in, long long p):
    """Extend an existing RREF with new rows; returns (rref, pivots)."""
    cdef i64[:, ::1] r0 = np.ascontiguousarray(
        np.asarray(r_in, dtype=np.int64))
    cdef i64[::1] piv0 = np.ascontiguousarray(
        np.asarray(pivots_in, dtype=np.int64).reshape(-1))
    rows_arr = np.ascontiguousarray(np.asarray(rows_in, dtype=np.int64)) % p
    cdef i64[:, ::1] rows = rows_arr
    cdef Py_ssize_t k0 = r0.shape[0]
    cdef Py_ssize_t m = rows.shape[0]
    cdef Py_ssize_t n
    if k0 > 0:
        n = r0.shape[1]
    else:
        n = rows.shape[1]
    cdef Py_ssize_t cap = k0 + m
    if cap > n:
        cap = n
    if k0 > cap:
        cap = k0

    buf_arr = np.zeros((cap if cap > 0 else 1, n if n > 0 else 1),
                       dtype=np.int64)
    piv_arr = np.zeros(cap if cap > 0 else 1, dtype=np.int64)
    cdef i64[:, ::1] buf = buf_arr
    cdef i64[::1] piv = piv_arr
    cdef Py_ssize_t rank = k0
    cdef Py_ssize_t i, j, t, lead
    cdef i64 c, x

    for t in range(k0):
        piv[t] = piv0[t]
        for j in range(n):
            buf[t, j] = r0[t, j]

    cdef i64[::1] work
    work_arr = np.zeros(n if n > 0 else 1, dtype=np.int64)
    work = work_arr

    for i in range(m):
        for j in range(n):
            work[j] = rows[i, j]
        # reduce against current pivot rows
        for t in range(rank):
            c = work[piv[t]]
            if c != 0:
                for j in range(piv[t], n):
                    x = work[j] - c * buf[t, j]
                    x %= p
                    if x < 0:
                        x += p
                    work[j] = x
        lead = -1
        for j in range(n):
            if work[j] != 0:
                lead = j
                break
        if lead < 0:
            continue
        c = _inv_mod(work[lead], p)
        for j in range(lead, n):
            work[j] = (work[j] * c) % p
        # back-eliminate the new pivot column from existing rows
        for t in range(rank):
            c = buf[t, lead]
            if c != 0:
                for j in range(lead, n):
                    x = buf[t, j] - c * work[j]
                    x %= p
                    if x < 0:
                        x += p
                    buf[t, j] = x
        for j in range(n):
            buf[rank, j] = work[j]
        piv[rank] = lead
        rank += 1

    if rank == 0:
        return (np.zeros((0, n), dtype=np.int64),
                np.zeros((0,), dtype=np.int64))
    out_r = buf_arr[:rank]
    out_p = piv_arr[:rank]
    order = np.argsort(out_p, kind="stable")
    return (np.ascontiguousarray(out_r[order]),
            np.ascontiguousarray(out_p[order]))


def rref(rows_in, long long p):
    """Canonical reduced row echelon form mod p; returns (r, pivots)."""
    rows_arr = np.asarray(rows_in, dtype=np.int64)
    n = rows_arr.shape[1] if rows_arr.ndim == 2 else 0
    empty_r = np.zeros((0, n), dtype=np.int64)
    empty_p = np.zeros((0,), dtype=np.int64)
    return absorb(empty_r, empty_p, rows_arr, p)


def eval_quadrics(quads_in, pts_in, long long p):
    """Evaluate quadratic forms x^T Q x at many points; returns (N, m)."""
    quads_arr = np.ascontiguousarray(np.asarray(quads_in, dtype=np.int64) % p)
    pts_arr = np.ascontiguousarray(np.asarray(pts_in, dtype=np.int64) % p)
    cdef i64[:, :, ::1] quads = quads_arr
    cdef i64[:, ::1] pts = pts_arr
    cdef Py_ssize_t m = quads.shape[0]
    cdef Py_ssize_t K = quads.shape[1]
    cdef Py_ssize_t N = pts.shape[0]
    out_arr = np.zeros((N, m), dtype=np.int64)
    cdef i64[:, ::1] out = out_arr
    cdef Py_ssize_t i, a, b, s
    cdef i64 acc, row
    for s in range(N):
        for i in range(m):
            acc = 0
            for a in range(K):
                if pts[s, a] == 0:
                    continue
                row = 0
                for b in range(K):
                    if quads[i, a, b] != 0:
                        row = (row + quads[i, a, b] * pts[s, b]) % p
                acc = (acc + row * pts[s, a]) % p
            out[s, i] = acc
    return out_arr

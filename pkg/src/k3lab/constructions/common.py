"""Shared geometric helpers for the construction pipelines."""

from __future__ import annotations

import numpy as np

from ..errors import (DependentVectors, NotOnVariety, NotStabilized,
                      SingularSurface, SpanDegenerate)
from ..exactlin import FiniteField
from ..grassmann import (GradedIdeal, LinearSubspace, Poly, hilbert_function,
                         monomials, normalize_point, plucker_embed,
                         rational_points, restrict_ideal, jacobian_rank_at)
from .rng import Rng, _pair_rank


def random_homogeneous_poly(field: FiniteField, nvars: int, degree: int,
                            rng: Rng) -> Poly:
    """Random nonzero homogeneous polynomial, dense over the monomial order."""
    mons = monomials(nvars, degree)
    coeffs = rng.coefficients(field, len(mons))
    return Poly(field, nvars, {m: c for m, c in zip(mons, coeffs) if c})


def pad_poly(poly: Poly, nvars: int) -> Poly:
    """View a polynomial in a larger ring; new variables do not appear."""
    if nvars < poly.nvars:
        raise ValueError("cannot shrink the ring")
    terms = {exps + (0,) * (nvars - poly.nvars): c
             for exps, c in poly.terms.items()}
    return Poly(poly.field, nvars, terms)


def poly_from_dense(field: FiniteField, nvars: int, degree: int,
                    coeffs) -> Poly:
    """Inverse of Poly.coeff_vector for a fixed homogeneous degree."""
    mons = monomials(nvars, degree)
    if len(coeffs) != len(mons):
        raise ValueError("coefficient list does not match the degree")
    return Poly(field, nvars,
                {m: int(c) % field.q for m, c in zip(mons, coeffs)
                 if int(c) % field.q})


def linear_forms_to_polys(field: FiniteField, rows) -> list:
    """Degree-1 polynomials from coefficient rows."""
    rows = np.asarray(rows, dtype=np.int64)
    nv = rows.shape[1]
    out = []
    for row in rows:
        exps = {tuple(1 if j == v else 0 for j in range(nv)): int(c) % field.q
                for v, c in enumerate(row) if int(c) % field.q}
        if exps:
            out.append(Poly(field, nv, exps))
    return out


def on_grassmannian(sys_, field: FiniteField, pt) -> bool:
    """Whether a coordinate vector satisfies all Plucker relations."""
    for rel in sys_.relations:
        acc = 0
        for (a, b), c in rel.items():
            term = field.mul(int(pt[a]) % field.q, int(pt[b]) % field.q)
            if c == -1:
                term = field.neg(term)
            acc = field.add(acc, term)
        if acc != 0:
            return False
    return True


def dual_point_basis(field: FiniteField, n: int, pt):
    """Recover a basis (alpha, beta) of the 2-space a wedge vector came from.

    The antisymmetric matrix with entries p_ab has column space equal to
    span(alpha, beta) whenever the vector is decomposable.
    """
    omega = np.zeros((n, n), dtype=np.int64)
    idx = 0
    for a in range(n):
        for b in range(a + 1, n):
            v = int(pt[idx]) % field.q
            omega[a, b] = v
            omega[b, a] = field.neg(v)
            idx += 1
    cols = [tuple(int(x) for x in omega[:, j]) for j in range(n)
            if any(omega[:, j])]
    if not cols:
        raise DependentVectors("zero wedge vector")
    alpha = cols[0]
    for cand in cols[1:]:
        if _pair_rank(field, alpha, cand) == 2:
            return list(alpha), list(cand)
    raise DependentVectors("wedge vector is not decomposable")


def wedge_with_basis(field: FiniteField, sys_, ell) -> np.ndarray:
    """Rows spanning ell ^ V* in wedge coordinates (one per basis form)."""
    n = sys_.n
    rows = np.zeros((n, len(sys_.coords)), dtype=np.int64)
    for j in range(n):
        for idx, (a, b) in enumerate(sys_.coords):
            # (ell ^ e_j)_{ab} = ell_a [b == j] - ell_b [a == j]
            val = 0
            if b == j:
                val = int(ell[a]) % field.q
            elif a == j:
                val = field.neg(int(ell[b]) % field.q)
            rows[j, idx] = val
    return rows


def field_matmul(field: FiniteField, a, b) -> np.ndarray:
    """Matrix product over the field (vectorized for prime fields)."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if field.k == 1:
        return (a @ b) % field.p
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for r in range(a.shape[0]):
        for c in range(b.shape[1]):
            acc = 0
            for t in range(a.shape[1]):
                acc = field.add(acc, field.mul(int(a[r, t]), int(b[t, c])))
            out[r, c] = acc
    return out


def invert_matrix(field: FiniteField, mat) -> np.ndarray:
    """Inverse of a square matrix over the field (Gauss-Jordan)."""
    mat = np.asarray(mat, dtype=np.int64)
    n = mat.shape[0]
    a = [[int(x) % field.q for x in row] for row in mat]
    inv = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            raise DependentVectors("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        inv[col], inv[piv] = inv[piv], inv[col]
        s = field.inv(a[col][col])
        a[col] = [field.mul(s, x) for x in a[col]]
        inv[col] = [field.mul(s, x) for x in inv[col]]
        for r in range(n):
            if r != col and a[r][col]:
                c = a[r][col]
                a[r] = [field.sub(x, field.mul(c, y))
                        for x, y in zip(a[r], a[col])]
                inv[r] = [field.sub(x, field.mul(c, y))
                          for x, y in zip(inv[r], inv[col])]
    return np.array(inv, dtype=np.int64)


def subspace_coordinates(sub: LinearSubspace, pt):
    """Coordinates of an ambient point in a subspace's echelon basis."""
    field = sub.field
    rows = sub.points
    if rows.shape[0] == 0:
        raise NotOnVariety("empty subspace")
    pivots = [int(np.nonzero(row)[0][0]) for row in rows]
    coords = [int(pt[c]) % field.q for c in pivots]
    recon = [0] * rows.shape[1]
    for z, row in zip(coords, rows):
        for j, r in enumerate(row):
            recon[j] = field.add(recon[j], field.mul(z, int(r)))
    if any(field.sub(recon[j], int(pt[j]) % field.q) for j in range(len(recon))):
        raise NotOnVariety("point is not in the subspace")
    return coords


def lift_point(field: FiniteField, sub: LinearSubspace, internal):
    """Ambient coordinates of a point given in subspace coordinates."""
    out = [0] * sub.ambient
    for z, row in zip(internal, sub.points):
        zz = int(z) % field.q
        if zz == 0:
            continue
        for j, r in enumerate(row):
            if r:
                out[j] = field.add(out[j], field.mul(zz, int(r)))
    return tuple(out)


def restrict_form(field: FiniteField, sub: LinearSubspace, form):
    """A linear form on the ambient space, written in subspace coordinates."""
    out = []
    for row in sub.points:
        acc = 0
        for j, r in enumerate(row):
            if r and int(form[j]) % field.q:
                acc = field.add(acc, field.mul(int(r), int(form[j]) % field.q))
        out.append(acc)
    return out


def hf_expected(builder, name: str, ideal: GradedIdeal, expect, error):
    """Record a Hilbert-function table check; raise `error` on mismatch."""
    got = [hilbert_function(ideal, d) for d, _ in expect]
    builder.require(name, [v for _, v in expect], got, error)


def stabilized_hf(ideal: GradedIdeal, start: int = 2, cap: int = 9) -> int:
    """Value where the Hilbert function stabilizes, scanning start..cap."""
    prev = hilbert_function(ideal, start)
    for d in range(start + 1, cap + 1):
        cur = hilbert_function(ideal, d)
        if cur == prev:
            return cur
        prev = cur
    raise NotStabilized(f"Hilbert function still moving at degree {cap}")


def span_rank(field: FiniteField, ambient: int, rows) -> int:
    return LinearSubspace.from_points(field, ambient, rows).points.shape[0]


def require_span(field: FiniteField, ambient: int, rows, rank: int,
                 what: str) -> LinearSubspace:
    sub = LinearSubspace.from_points(field, ambient, rows)
    if sub.points.shape[0] != rank:
        raise SpanDegenerate(
            f"{what}: expected rank {rank}, got {sub.points.shape[0]}")
    return sub


def sample_smooth_points(ideal: GradedIdeal, rng: Rng, cfg, *,
                         expected_rank: int, target: int = 20,
                         max_slices: int = 8) -> list:
    """Sample rational points via random hyperplane slices.

    A hyperplane section of a surface is a curve with roughly q rational
    points of its own, so each slice contributes a healthy sample; a
    lower-dimensional slice would almost never contain rational points.
    Returns the sampled points (ambient coordinates) and raises
    SingularSurface as soon as one of them has the wrong Jacobian rank.
    Smoothness evidence is sampled, never exhaustive.
    """
    field = ideal.field
    nv = ideal.nvars
    found = []
    for _ in range(max_slices):
        if len(found) >= target:
            break
        row = rng.nonzero_vector(field, nv)
        hyper = LinearSubspace.from_forms(field, nv, [row])
        if hyper.projective_dim != nv - 2:
            continue
        sliced = restrict_ideal(ideal, hyper)
        for pt in rational_points(sliced, cfg):
            lifted = lift_point(field, hyper, pt)
            rank = jacobian_rank_at(ideal, lifted)
            if rank != expected_rank:
                raise SingularSurface(
                    f"Jacobian rank {rank} != {expected_rank} at {lifted}")
            found.append(lifted)
    return found


def dual_seed_embed(sys_, field: FiniteField, rng: Rng):
    """A random 2-subspace with its normalized wedge-coordinate point."""
    u, v = rng.independent_pair(field, sys_.n)
    pt = plucker_embed(sys_, field, u, v)
    return (u, v), normalize_point(field, pt)

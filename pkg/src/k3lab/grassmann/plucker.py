"""Plucker geometry of G(2,n) for n in {4, 5, 6}.

Coordinates are indexed by 2-subsets {i < j} of {0..n-1} in lexicographic
order, so G(2,4) lives in P^5, G(2,5) in P^9 and G(2,6) in P^14.  The
orientation e_0 ^ ... ^ e_{n-1} |-> 1 fixes a perfect pairing between
2-vectors and (n-2)-vectors; composing it with the complement map and its
permutation signs identifies the dual projective space with the primal
coordinate space in such a way that the pairing becomes the plain dot
product and the dual Grassmannian has the same Plucker equations.  Dual
points of 2-subspaces are therefore just their wedge coordinates, and a
Schubert hyperplane is the dot product against such a point.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from ..config import DEFAULT, Config
from ..errors import (CapExceeded, DependentVectors, DimensionMismatch,
                      UnsupportedDimension)
from ..exactlin import FiniteField


def _perm_sign(seq) -> int:
    sign = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def complement_signs(n: int):
    """sign of the permutation (i, j, complement ascending) per 2-subset."""
    out = []
    for i, j in combinations(range(n), 2):
        rest = [r for r in range(n) if r not in (i, j)]
        out.append(_perm_sign([i, j] + rest))
    return tuple(out)


@dataclass(frozen=True)
class PluckerSystem:
    """Coordinate bookkeeping for G(2,n) plus its quadratic relations.

    relations: one three-term quadric per 4-subset {i<j<k<l}, stored as a
    mapping from coordinate-index pairs (a, b), a < b, to a coefficient in
    {-1, +1}:  p_ij p_kl - p_ik p_jl + p_il p_jk.
    """

    n: int
    coords: tuple
    relations: tuple
    epsilon: tuple

    @property
    def ncoords(self) -> int:
        return len(self.coords)

    def coord_index(self, i: int, j: int) -> int:
        return self.coords.index((i, j) if i < j else (j, i))

    def relation_matrices(self) -> np.ndarray:
        """Relations as upper-triangular matrices Q with x^T Q x the form.

        Upper-triangular storage keeps the evaluation exact in every
        characteristic, including 2.
        """
        m = len(self.relations)
        k = self.ncoords
        out = np.zeros((m, k, k), dtype=np.int64)
        for t, rel in enumerate(self.relations):
            for (a, b), c in rel.items():
                out[t, a, b] = c
        return out


_SYSTEMS: dict = {}


def plucker_system(n: int) -> PluckerSystem:
    """The Plucker system for G(2,n); cached, one instance per n."""
    if n not in (4, 5, 6):
        raise UnsupportedDimension(f"G(2,n) supported for n in 4..6, got {n}")
    sys_ = _SYSTEMS.get(n)
    if sys_ is None:
        coords = tuple(combinations(range(n), 2))
        pos = {pair: t for t, pair in enumerate(coords)}
        rels = []
        for i, j, k, l in combinations(range(n), 4):
            rel = {}
            for a, b, coeff in (((i, j), (k, l), 1),
                                ((i, k), (j, l), -1),
                                ((i, l), (j, k), 1)):
                u, v = pos[a], pos[b]
                if u > v:
                    u, v = v, u
                rel[(u, v)] = coeff
            rels.append(rel)
        _SYSTEMS[n] = PluckerSystem(n, coords, tuple(rels),
                                    complement_signs(n))
        sys_ = _SYSTEMS[n]
    return sys_


def plucker_relations(n: int):
    """The quadratic relations of G(2,n): one per 4-subset of {0..n-1}."""
    return list(plucker_system(n).relations)


def plucker_embed(sys_: PluckerSystem, field: FiniteField, u, v):
    """Wedge coordinates of span(u, v), normalized to first nonzero = 1."""
    u = [int(x) % field.q for x in u]
    v = [int(x) % field.q for x in v]
    if len(u) != sys_.n or len(v) != sys_.n:
        raise DimensionMismatch(f"vectors must have length {sys_.n}")
    pt = []
    for i, j in sys_.coords:
        pt.append(field.sub(field.mul(u[i], v[j]), field.mul(u[j], v[i])))
    if all(x == 0 for x in pt):
        raise DependentVectors("wedge of dependent vectors is zero")
    return normalize_point(field, pt)


def normalize_point(field: FiniteField, pt):
    """Scale so the first nonzero coordinate is 1; canonical representative."""
    lead = next(x for x in pt if x != 0)
    inv = field.inv(lead)
    return tuple(field.mul(inv, x) for x in pt)


def schubert_hyperplane(sys_: PluckerSystem, field: FiniteField, u, v):
    """The hyperplane of 2-subspaces meeting span(u,v)^perp.

    Returns the coefficient vector of the linear form; in star coordinates
    it is exactly the dual point p(span(u, v)), and the form vanishes at
    p(U') precisely when dim(U' cap span(u,v)^perp) >= 1.
    """
    return plucker_embed(sys_, field, u, v)


def subspace_meets(field: FiniteField, basis_a, basis_b) -> int:
    """dim over F_q of the intersection of two spanned subspaces."""
    from ..exactlin import FieldMatrix
    rows = [list(r) for r in basis_a] + [list(r) for r in basis_b]
    rank, _ = FieldMatrix(field, rows).rank_kernel()
    ra, _ = FieldMatrix(field, [list(r) for r in basis_a]).rank_kernel()
    rb, _ = FieldMatrix(field, [list(r) for r in basis_b]).rank_kernel()
    return ra + rb - rank


def gaussian_binomial_points(n: int, q: int) -> int:
    """#G(2,n)(F_q) = (q^n - 1)(q^{n-1} - 1) / ((q^2 - 1)(q - 1))."""
    num = (q ** n - 1) * (q ** (n - 1) - 1)
    den = (q * q - 1) * (q - 1)
    return num // den


def iter_reduced_bases(n: int, field: FiniteField):
    """All 2-subspaces of F_q^n, one canonical reduced-row-echelon basis
    each, ordered by pivot pair then by the free entries as an ascending
    base-q counter with the last free position varying fastest."""
    q = field.q
    for c1, c2 in combinations(range(n), 2):
        free1 = [c for c in range(c1 + 1, n) if c != c2]
        free2 = list(range(c2 + 1, n))
        slots = len(free1) + len(free2)
        for counter in range(q ** slots):
            digits = []
            rem = counter
            for _ in range(slots):
                digits.append(rem % q)
                rem //= q
            digits.reverse()
            row1 = [0] * n
            row2 = [0] * n
            row1[c1] = 1
            row2[c2] = 1
            for pos_, val in zip(free1, digits[:len(free1)]):
                row1[pos_] = val
            for pos_, val in zip(free2, digits[len(free1):]):
                row2[pos_] = val
            yield (row1, row2)


def enumerate_grassmannian(n: int, field: FiniteField,
                           cfg: Config = DEFAULT):
    """All F_q-points of G(2,n) embedded in Plucker coordinates.

    Canonical order: reduced-echelon cell enumeration (see
    iter_reduced_bases); no duplicates because distinct cells give
    distinct subspaces and the embedding is injective.
    """
    sys_ = plucker_system(n)
    total = gaussian_binomial_points(n, field.q)
    if total > cfg.grassmann_cap:
        raise CapExceeded(
            f"G(2,{n})(F_{field.q}) has {total} points, cap "
            f"{cfg.grassmann_cap}")
    out = []
    for row1, row2 in iter_reduced_bases(n, field):
        out.append(plucker_embed(sys_, field, row1, row2))
    return out

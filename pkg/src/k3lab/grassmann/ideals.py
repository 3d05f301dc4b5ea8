"""Graded ideals over finite fields, driven entirely by linear algebra.

Everything here works degree by degree: a homogeneous ideal is only ever
touched through its degree-d coefficient spaces, so Hilbert functions,
colon computations and point counts reduce to exact echelon computations
over F_q.  No saturation and no Groebner bases: the callers are expected
to work in degrees where their ideals already agree with the saturation,
and the stabilization guard in colon_linear_span raises NotStabilized
when that assumption is visibly violated.

Monomial order: within each degree, exponent tuples (e_0, ..., e_{N})
ascending lexicographically.  All dumped coefficient lists are dense over
that order; it is the graded-lex order with x_0 < ... < x_N.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from math import comb

import numpy as np

from .. import _kernels
from ..config import DEFAULT, Config
from ..errors import (CapExceeded, DimensionMismatch, NotOnVariety,
                      NotStabilized)
from ..exactlin import FieldMatrix, FiniteField
from .subspace import LinearSubspace, _echelon

_MONOMIAL_CAP = 200_000
_ENTRY_CAP = 60_000_000


@lru_cache(maxsize=None)
def monomials(nvars: int, d: int):
    """Exponent tuples of degree d in nvars variables, ascending lex."""
    if nvars == 1:
        return ((d,),)
    out = []
    for e0 in range(d + 1):
        for rest in monomials(nvars - 1, d - e0):
            out.append((e0,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(nvars: int, d: int):
    return {m: t for t, m in enumerate(monomials(nvars, d))}


class Poly:
    """Homogeneous polynomial over a finite field, sparse term dict."""

    __slots__ = ("field", "nvars", "terms", "degree")

    def __init__(self, field: FiniteField, nvars: int, terms: dict):
        self.field = field
        self.nvars = int(nvars)
        clean = {}
        deg = None
        for exps, coeff in terms.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != self.nvars:
                raise DimensionMismatch("exponent tuple length != nvars")
            coeff = int(coeff) % field.q if field.k == 1 else int(coeff)
            if coeff == 0:
                continue
            if deg is None:
                deg = sum(exps)
            elif sum(exps) != deg:
                raise DimensionMismatch("terms of mixed degree")
            clean[exps] = coeff
        self.terms = clean
        self.degree = 0 if deg is None else deg

    @classmethod
    def from_ints(cls, field: FiniteField, nvars: int, terms: dict):
        """Terms with plain integer coefficients, reduced into the field."""
        conv = {}
        for exps, c in terms.items():
            c = int(c)
            if field.k == 1:
                conv[exps] = c % field.p
            else:
                conv[exps] = c % field.p  # prime subfield embedding
        return cls(field, nvars, conv)

    def is_zero(self) -> bool:
        return not self.terms

    def coeff_vector(self):
        """Dense coefficients over monomials(nvars, degree)."""
        idx = monomial_index(self.nvars, self.degree)
        out = np.zeros(len(idx), dtype=np.int64)
        for exps, c in self.terms.items():
            out[idx[exps]] = c
        return out

    # arithmetic --------------------------------------------------------
    def mul_monomial(self, exps, coeff=1) -> "Poly":
        f = self.field
        exps = tuple(int(e) for e in exps)
        out = {}
        for e, c in self.terms.items():
            out[tuple(a + b for a, b in zip(e, exps))] = f.mul(c, coeff)
        return Poly(f, self.nvars, out)

    def mul(self, other: "Poly") -> "Poly":
        f = self.field
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                acc = out.get(key, 0)
                out[key] = f.add(acc, f.mul(c1, c2))
        return Poly(f, self.nvars, out)

    def add(self, other: "Poly") -> "Poly":
        f = self.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = f.add(out.get(e, 0), c)
        return Poly(f, self.nvars, out)

    def scale(self, coeff) -> "Poly":
        f = self.field
        return Poly(f, self.nvars,
                    {e: f.mul(c, coeff) for e, c in self.terms.items()})

    def derivative(self, v: int) -> "Poly":
        f = self.field
        out = {}
        for e, c in self.terms.items():
            if e[v] == 0:
                continue
            mult = e[v] % f.p
            if mult == 0:
                continue
            new = list(e)
            new[v] -= 1
            scalar = mult if f.k == 1 else mult  # prime subfield element
            out[tuple(new)] = f.mul(c, scalar)
        return Poly(f, self.nvars, out)

    # evaluation ---------------------------------------------------------
    def evaluate(self, pt):
        f = self.field
        pt = [int(x) % f.q for x in pt]
        acc = 0
        for e, c in self.terms.items():
            val = c
            for v, exp in enumerate(e):
                for _ in range(exp):
                    val = f.mul(val, pt[v])
            acc = f.add(acc, val)
        return acc

    def eval_many(self, pts: np.ndarray) -> np.ndarray:
        """Values at many points; pts is an (N, nvars) encoded array."""
        f = self.field
        pts = np.asarray(pts, dtype=np.int64)
        n = pts.shape[0]
        if f.k == 1:
            p = f.p
            acc = np.zeros(n, dtype=np.int64)
            for e, c in self.terms.items():
                val = np.full(n, c, dtype=np.int64)
                for v, exp in enumerate(e):
                    if exp:
                        col = pts[:, v]
                        pw = col
                        for _ in range(exp - 1):
                            pw = (pw * col) % p
                        val = (val * pw) % p
                acc = (acc + val) % p
            return acc
        acc = np.zeros(n, dtype=np.int64)
        for e, c in self.terms.items():
            val = np.full(n, c, dtype=np.int64)
            for v, exp in enumerate(e):
                for _ in range(exp):
                    val = f.mul_arr(val, pts[:, v])
            acc = f.add_arr(acc, val)
        return acc

    def substitute_linear(self, basis) -> "Poly":
        """Compose with the linear map y |-> y @ basis (rows span the
        target coordinates): returns a polynomial in len(basis) variables.
        """
        f = self.field
        basis = np.asarray(basis, dtype=np.int64)
        newvars = basis.shape[0]
        lin = []
        for c in range(basis.shape[1]):
            term = {}
            for j in range(newvars):
                if basis[j, c]:
                    e = [0] * newvars
                    e[j] = 1
                    term[tuple(e)] = int(basis[j, c])
            lin.append(Poly(f, newvars, term))
        one = Poly(f, newvars, {(0,) * newvars: 1})
        out = Poly(f, newvars, {})
        for e, coeff in self.terms.items():
            part = one.scale(coeff)
            for v, exp in enumerate(e):
                for _ in range(exp):
                    part = part.mul(lin[v])
            out = out.add(part)
        return out

    def quadric_matrix(self) -> np.ndarray:
        """Upper-triangular Q with x^T Q x = poly; degree must be 2."""
        if self.degree != 2 and not self.is_zero():
            raise DimensionMismatch("quadric_matrix needs degree 2")
        q = np.zeros((self.nvars, self.nvars), dtype=np.int64)
        for e, c in self.terms.items():
            nz = [v for v, exp in enumerate(e) if exp]
            if len(nz) == 1:
                q[nz[0], nz[0]] = c
            else:
                q[nz[0], nz[1]] = c
        return q

    def __repr__(self):
        return f"Poly(deg={self.degree}, terms={len(self.terms)})"


@dataclass(frozen=True)
class GradedIdeal:
    """Homogeneous ideal; degree pieces from generators or a point locus.

    With points set, degree_piece(d) is the full space of degree-d forms
    vanishing on the points (the saturated piece); otherwise it is the
    span of monomial multiples of the generators (possibly smaller than
    the saturation in low degrees).
    """

    field: FiniteField
    nvars: int
    generators: tuple
    points: tuple = None

    @classmethod
    def from_generators(cls, gens) -> "GradedIdeal":
        gens = [g for g in gens if not g.is_zero()]
        if not gens:
            raise DimensionMismatch("need at least one nonzero generator")
        f = gens[0].field
        nv = gens[0].nvars
        for g in gens:
            if g.field != f or g.nvars != nv:
                raise DimensionMismatch("generators over mixed rings")
        return cls(f, nv, tuple(gens))

    @classmethod
    def from_points(cls, field: FiniteField, nvars: int, pts
                    ) -> "GradedIdeal":
        pts = tuple(tuple(int(x) % field.q for x in p) for p in pts)
        return cls(field, nvars, (), pts)

    # degree pieces -----------------------------------------------------
    def _check_caps(self, d: int):
        nmons = comb(self.nvars - 1 + d, d)
        if nmons > _MONOMIAL_CAP:
            raise CapExceeded(f"{nmons} monomials of degree {d} exceed "
                              f"the cap {_MONOMIAL_CAP}")
        return nmons

    def degree_piece(self, d: int):
        """Canonical echelon basis (rows, pivots) of the degree-d piece."""
        nmons = self._check_caps(d)
        if self.points is not None:
            ev = _evaluation_matrix(self.field, self.points, self.nvars, d)
            if self.field.k == 1:
                ker = _kernels.nullspace(ev, self.field.p)
            else:
                _, basis = FieldMatrix(self.field, ev).rank_kernel()
                ker = np.asarray([list(v) for v in basis],
                                 dtype=np.int64).reshape(-1, nmons)
            rows = _echelon(self.field, ker)
        else:
            stack = []
            total = 0
            for g in self.generators:
                if g.degree > d:
                    continue
                shift_exps = monomials(self.nvars, d - g.degree)
                total += len(shift_exps) * nmons
                if total > _ENTRY_CAP:
                    raise CapExceeded("degree piece exceeds the entry cap")
                vec = g.coeff_vector()
                idx_d = monomial_index(self.nvars, d)
                gmons = monomials(self.nvars, g.degree)
                for shift in shift_exps:
                    row = np.zeros(nmons, dtype=np.int64)
                    for t, gm in enumerate(gmons):
                        if vec[t]:
                            key = tuple(a + b for a, b in zip(gm, shift))
                            row[idx_d[key]] = vec[t]
                    stack.append(row)
            if not stack:
                rows = np.zeros((0, nmons), dtype=np.int64)
            else:
                rows = _echelon(self.field, np.asarray(stack,
                                                       dtype=np.int64))
        pivots = _leading_columns(rows)
        return rows, pivots

    def to_json(self) -> dict:
        gens = []
        for g in self.generators:
            gens.append({
                "degree": g.degree,
                "coefficients": [int(x) for x in g.coeff_vector()],
            })
        out = {
            "variables": self.nvars,
            "field": self.field.describe(),
            "monomial_order": "graded-lex, exponent tuples ascending "
                              "lexicographically within each degree, "
                              "x0 < ... < xN",
            "generators": gens,
        }
        if self.points is not None:
            out["point_locus"] = [list(p) for p in self.points]
        return out


def _leading_columns(rows: np.ndarray):
    out = []
    for row in rows:
        nz = np.flatnonzero(row)
        out.append(int(nz[0]))
    return np.asarray(out, dtype=np.int64)


def _evaluation_matrix(field: FiniteField, pts, nvars: int, d: int):
    """Rows: one per point; columns: monomials of degree d evaluated."""
    mons = monomials(nvars, d)
    arr = np.asarray([list(p) for p in pts], dtype=np.int64)
    cols = []
    for e in mons:
        if field.k == 1:
            col = np.ones(arr.shape[0], dtype=np.int64)
            for v, exp in enumerate(e):
                for _ in range(exp):
                    col = (col * arr[:, v]) % field.p
        else:
            col = np.zeros(arr.shape[0], dtype=np.int64)
            col[:] = 1 % field.q
            for v, exp in enumerate(e):
                for _ in range(exp):
                    col = field.mul_arr(col, arr[:, v])
        cols.append(col)
    return np.stack(cols, axis=1)


def hilbert_function(ideal: GradedIdeal, d: int) -> int:
    """dim of the degree-d piece of the quotient ring."""
    if d < 0:
        raise DimensionMismatch("degree must be nonnegative")
    nmons = comb(ideal.nvars - 1 + d, d)
    rows, _ = ideal.degree_piece(d)
    return nmons - rows.shape[0]


def linear_section_ideal(sys_, sub: LinearSubspace) -> GradedIdeal:
    """Restrict the Plucker relations to a linear subspace.

    The subspace is parametrized by its echelon point basis; each relation
    pulls back to a quadric in projective_dim + 1 variables.
    """
    f = sub.field
    newvars = sub.points.shape[0]
    basis = sub.points
    gens = []
    for rel in sys_.relations:
        terms = {}
        for (a, b), c in rel.items():
            e = [0] * sys_.ncoords
            e[a] += 1
            e[b] += 1
            terms[tuple(e)] = c % f.p
        poly = Poly(f, sys_.ncoords, terms)
        gens.append(poly.substitute_linear(basis))
    nonzero = [g for g in gens if not g.is_zero()]
    if not nonzero:
        # a subspace inside the Grassmannian: the zero ideal, kept with
        # an explicit zero generator so the variable count survives
        return GradedIdeal(f, newvars, (Poly(f, newvars, {}),))
    return GradedIdeal(f, newvars, tuple(nonzero))


def restrict_ideal(ideal: GradedIdeal, sub: LinearSubspace) -> GradedIdeal:
    """Substitute the subspace parametrization into every generator."""
    gens = [g.substitute_linear(sub.points) for g in ideal.generators]
    nonzero = [g for g in gens if not g.is_zero()]
    f = ideal.field
    newvars = sub.points.shape[0]
    if not nonzero:
        return GradedIdeal(f, newvars, (Poly(f, newvars, {}),))
    return GradedIdeal(f, newvars, tuple(nonzero))


def sum_ideals(a: GradedIdeal, b: GradedIdeal) -> GradedIdeal:
    if a.field != b.field or a.nvars != b.nvars:
        raise DimensionMismatch("ideal sum needs matching rings")
    return GradedIdeal(a.field, a.nvars, a.generators + b.generators)


def colon_linear_span(ideal: GradedIdeal, sub_ideal: GradedIdeal,
                      dmax: int) -> LinearSubspace:
    """Span of the residual subscheme by bounded-degree colon conditions.

    Collects every linear form lam with lam * (sub_ideal)_d contained in
    ideal_{d+1} for all d <= dmax; the common zero space of those forms is
    returned.  The collected form space must agree between dmax - 1 and
    dmax, otherwise NotStabilized is raised and the caller should raise
    dmax.
    """
    if ideal.field != sub_ideal.field or ideal.nvars != sub_ideal.nvars:
        raise DimensionMismatch("colon needs matching rings")
    if dmax < 2:
        raise DimensionMismatch("need dmax >= 2 to test stabilization")
    f = ideal.field
    nv = ideal.nvars

    constraints = np.zeros((0, nv), dtype=np.int64)
    prev_kernel = None
    for d in range(1, dmax + 1):
        j_rows, _ = sub_ideal.degree_piece(d)
        i_rows, i_piv = ideal.degree_piece(d + 1)
        if j_rows.shape[0]:
            idx_next = monomial_index(nv, d + 1)
            mons_d = monomials(nv, d)
            shift_of = []
            for v in range(nv):
                shift_of.append(np.asarray(
                    [idx_next[tuple(e[t] + (1 if t == v else 0)
                                    for t in range(nv))]
                     for e in mons_d], dtype=np.int64))
            nmons_next = comb(nv + d, d + 1)
            for b in j_rows:
                lifted = np.zeros((nv, nmons_next), dtype=np.int64)
                for v in range(nv):
                    lifted[v, shift_of[v]] = b
                residual = _reduce_rows(f, lifted, i_rows, i_piv)
                new = residual.T[np.any(residual.T != 0, axis=1)]
                if new.shape[0]:
                    constraints = _echelon(
                        f, np.vstack([constraints, new]))
        if d >= dmax - 1:
            kernel = _echelon(f, _null_rows(f, constraints, nv))
            if d == dmax - 1:
                prev_kernel = kernel
            elif not np.array_equal(prev_kernel, kernel):
                raise NotStabilized(
                    f"colon span still moving between degrees "
                    f"{dmax - 1} and {dmax}")
    if prev_kernel.shape[0] == nv:
        # Every linear form satisfies the colon condition, which happens
        # exactly when the residual subscheme is empty.  Report the whole
        # ambient space: an empty residual puts no constraint on where a
        # further component could sit.
        return LinearSubspace.whole(f, nv)
    return LinearSubspace.from_forms(f, nv, prev_kernel)


def _null_rows(field: FiniteField, rows: np.ndarray, width: int):
    if rows.shape[0] == 0:
        return np.eye(width, dtype=np.int64)
    if field.k == 1:
        return _kernels.nullspace(rows % field.p, field.p)
    _, basis = FieldMatrix(field, rows).rank_kernel()
    return np.asarray([list(v) for v in basis], dtype=np.int64).reshape(
        -1, width)


def _reduce_rows(field: FiniteField, rows: np.ndarray, r: np.ndarray,
                 pivots: np.ndarray) -> np.ndarray:
    """Reduce rows modulo an echelon basis (r, pivots)."""
    if r.shape[0] == 0 or rows.shape[0] == 0:
        return rows
    if field.k == 1:
        p = field.p
        coef = rows[:, pivots]
        return (rows - coef @ r) % p
    out = [list(map(int, row)) for row in rows]
    for t in range(r.shape[0]):
        pc = int(pivots[t])
        base = [int(x) for x in r[t]]
        for row in out:
            c = row[pc]
            if c:
                for j in range(len(row)):
                    row[j] = field.sub(row[j], field.mul(c, base[j]))
    return np.asarray(out, dtype=np.int64)


# ---------------------------------------------------------------------
# projective point enumeration


def projective_point_count(q: int, nvars: int) -> int:
    return (q ** nvars - 1) // (q - 1)


def _point_block(field: FiniteField, nvars: int, lead: int,
                 start: int, stop: int) -> np.ndarray:
    """Points with first nonzero coordinate at position lead, canonical
    (that coordinate equals 1), for counter values [start, stop)."""
    q = field.q
    tail = nvars - lead - 1
    counters = np.arange(start, stop, dtype=np.int64)
    pts = np.zeros((counters.shape[0], nvars), dtype=np.int64)
    pts[:, lead] = 1
    rem = counters
    for t in range(tail - 1, -1, -1):
        pts[:, lead + 1 + t] = rem % q
        rem = rem // q
    return pts


def iter_projective_chunks(field: FiniteField, nvars: int,
                           chunk: int = 1 << 17):
    """Deterministic chunked enumeration of P^{nvars-1}(F_q)."""
    q = field.q
    for lead in range(nvars):
        block = q ** (nvars - lead - 1)
        start = 0
        while start < block:
            stop = min(start + chunk, block)
            yield _point_block(field, nvars, lead, start, stop)
            start = stop


def rational_points(ideal: GradedIdeal, cfg: Config = DEFAULT):
    """All F_q-points of the vanishing locus in P^{nvars-1}.

    Canonical normalization (first nonzero coordinate = 1) and a
    deterministic order independent of the thread count.
    """
    f = ideal.field
    nv = ideal.nvars
    total = projective_point_count(f.q, nv)
    if total > cfg.projective_cap:
        raise CapExceeded(f"P^{nv - 1}(F_{f.q}) has {total} points, cap "
                          f"{cfg.projective_cap}")
    gens = [g for g in ideal.generators if not g.is_zero()]
    quad_fast = (f.k == 1 and gens
                 and all(g.degree == 2 for g in gens))
    quads = None
    if quad_fast:
        quads = np.stack([g.quadric_matrix() for g in gens])

    def keep(pts: np.ndarray) -> np.ndarray:
        if pts.shape[0] == 0:
            return pts
        if quads is not None:
            vals = _kernels.eval_quadrics(quads, pts, f.p)
            mask = ~np.any(vals, axis=1)
        else:
            mask = np.ones(pts.shape[0], dtype=bool)
            for g in gens:
                mask &= (g.eval_many(pts) == 0)
                if not mask.any():
                    break
        return pts[mask]

    chunks = list(iter_projective_chunks(f, nv))
    if cfg.threads > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            kept = list(pool.map(keep, chunks))
    else:
        kept = [keep(c) for c in chunks]
    out = []
    for arr in kept:
        out.extend(tuple(int(x) for x in row) for row in arr)
    return out


def jacobian_rank_at(ideal: GradedIdeal, pt) -> int:
    """Rank of the generator Jacobian at a point of the locus."""
    f = ideal.field
    pt = tuple(int(x) % f.q for x in pt)
    gens = [g for g in ideal.generators if not g.is_zero()]
    for g in gens:
        if g.evaluate(pt) != 0:
            raise NotOnVariety("point does not satisfy the generators")
    rows = []
    for g in gens:
        rows.append([g.derivative(v).evaluate(pt) for v in range(ideal.nvars)])
    if not rows:
        return 0
    if f.k == 1:
        return _kernels.rank(np.asarray(rows, dtype=np.int64), f.p)
    rank, _ = FieldMatrix(f, rows).rank_kernel()
    return rank

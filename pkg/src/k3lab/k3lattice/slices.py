"""Complete enumeration of divisor classes with fixed degree and square.

On a hyperbolic lattice the classes D with D.L = d form an affine coset
of the rank n-1 sublattice orthogonal to L, on which the form is negative
definite; fixing D^2 = s therefore cuts out a finite ellipsoid.  The
enumeration is exact and complete: the positive form on the coset is
diagonalized once per lattice into integer linear forms rho_i with
q(Y) = sum_i rho_i(Y)^2 / (Delta_i Delta_{i+1}) over the scaled integer
coordinates Y = Delta_m t - c_hat, so every interval bound is computed
with integer square roots, and each leaf is re-checked against the Gram
matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .. import SCHEMA
from ..errors import NotHyperbolic
from ..exactlin import integer_solve_affine, signature
from .lattice import DivisorClass, PolarizedLattice


def _bareiss_echelon_symmetric(p_mat):
    """Fraction-free echelon of a positive definite integer matrix.

    Returns (rows, minors) where rows[i][j] = det P[{0..i},{0..i-1,j}]
    and minors[i] = det of the leading i x i block (minors[0] = 1), so
    rows[i][i] = minors[i+1] and the form diagonalizes as
    q(Y) = sum_i (sum_{j>=i} rows[i][j] Y_j)^2 / (minors[i] minors[i+1]).
    """
    m = len(p_mat)
    a = [list(map(int, row)) for row in p_mat]
    minors = [1] * (m + 1)
    for k in range(m):
        pivot = a[k][k]
        if pivot <= 0:
            raise NotHyperbolic("coset form is not positive definite")
        minors[k + 1] = pivot
        prev = minors[k]
        for i in range(k + 1, m):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, m):
                row_i[j] = (pivot * row_i[j] - aik * row_k[j]) // prev
            row_i[k] = 0
    return a, minors


def _hi_root(v: int, w: int, bn: int, bd: int) -> int:
    """floor((v + sqrt(bn/bd)) / w) exactly, for w > 0, bn >= 0.

    Uses floor((A + sqrt(X)) / D) = (A + isqrt(X)) // D, valid because
    no integer can lie strictly between isqrt(X) and sqrt(X).
    """
    return (v * bd + isqrt(bn * bd)) // (w * bd)


def _lo_root(v: int, w: int, bn: int, bd: int) -> int:
    """ceil((v - sqrt(bn/bd)) / w) exactly, for w > 0, bn >= 0."""
    return -((-v * bd + isqrt(bn * bd)) // (w * bd))


class _SliceContext:
    """Per-(gram, polarization) data reused across slice enumerations."""

    __slots__ = ("ok", "note", "gcd_step", "v1", "kernel", "u_base",
                 "c0_base", "rows", "minors", "det_m", "c_hat_base",
                 "uc_base", "m", "n", "lam", "coef")

    def __init__(self, lat, l_coords):
        n = lat.rank
        self.n = n
        g = lat.gram
        a_row = [sum(g[i][j] * l_coords[j] for j in range(n))
                 for i in range(n)]
        sol = integer_solve_affine([a_row], [1])
        if sol is None:
            # the degree functional has a gcd > 1; re-solve for the gcd
            step = 0
            for x in a_row:
                step = _gcd(step, x)
            sol = integer_solve_affine([a_row], [step])
            self.gcd_step = step
        else:
            self.gcd_step = 1
        if sol is None:
            self.ok = False
            self.note = "degree-not-representable"
            return
        self.ok = True
        self.note = ""
        v1, kernel = sol
        self.v1 = v1
        self.kernel = kernel
        m = len(kernel)
        self.m = m
        if m == 0:
            return
        q_mat = [[lat.pairing(kernel[i], kernel[j]) for j in range(m)]
                 for i in range(m)]
        if signature(q_mat) != (0, m, 0):
            raise NotHyperbolic("orthogonal complement of L is not "
                                "negative definite")
        p_mat = [[-x for x in row] for row in q_mat]
        self.rows, self.minors = _bareiss_echelon_symmetric(p_mat)
        self.det_m = self.minors[m]
        self.u_base = [lat.pairing(kernel[i], v1) for i in range(m)]
        self.c0_base = lat.square(v1)
        # c_hat_base = det(P) * P^{-1} u_base, integral by Cramer
        self.c_hat_base = _scaled_solve(p_mat, self.u_base, self.det_m)
        self.uc_base = sum(self.u_base[i] * self.c_hat_base[i]
                           for i in range(m))
        # the level-i square term carries denominator Delta_i Delta_{i+1};
        # scaling the budget by their lcm keeps the whole descent integral
        lam = 1
        for i in range(m):
            pr = self.minors[i] * self.minors[i + 1]
            lam = lam * pr // _gcd(lam, pr)
        self.lam = lam
        self.coef = [lam // (self.minors[i] * self.minors[i + 1])
                     for i in range(m)]


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _scaled_solve(p_mat, rhs, det):
    """det * P^{-1} rhs as integers, via exact rational elimination."""
    m = len(p_mat)
    a = [[Fraction(x) for x in row] + [Fraction(rhs[i])]
         for i, row in enumerate(p_mat)]
    for c in range(m):
        sel = next(i for i in range(c, m) if a[i][c] != 0)
        a[c], a[sel] = a[sel], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for i in range(m):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    out = []
    for i in range(m):
        v = a[i][m] * det
        if v.denominator != 1:
            raise NotHyperbolic("coset center scaling failed")
        out.append(v.numerator)
    return out


_CONTEXT_CACHE: dict = {}


def _context(pl: PolarizedLattice) -> _SliceContext:
    key = (pl.lattice.gram, pl.polarization.coords)
    ctx = _CONTEXT_CACHE.get(key)
    if ctx is None:
        ctx = _SliceContext(pl.lattice, pl.polarization.coords)
        _CONTEXT_CACHE[key] = ctx
    return ctx


@dataclass(frozen=True)
class CensusResult:
    """Outcome of a complete slice enumeration."""

    degree: int
    square: int
    orient: str
    classes: tuple
    complete: bool = True
    note: str = ""

    @property
    def count(self) -> int:
        return len(self.classes)

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "query": {"degree": self.degree, "square": self.square,
                      "orient": self.orient},
            "classes": [list(c) for c in self.classes],
            "count": self.count,
            "complete": self.complete,
            "note": self.note,
        }


_ORIENTS = ("nonneg", "positive", "all")


def enumerate_slice(pl: PolarizedLattice, degree: int, square: int,
                    orient: str = "nonneg") -> CensusResult:
    """All classes D with D.L = degree, D^2 = square, D != 0, filtered by
    the orientation policy against the reference nef class.

    The result is complete: the coset search region provably contains
    every solution.  Classes are sorted lexicographically by coordinates.
    """
    if orient not in _ORIENTS:
        raise ValueError(f"orient must be one of {_ORIENTS}")
    degree = int(degree)
    square = int(square)
    lat = pl.lattice
    n = lat.rank
    l_sq = pl.square(pl.polarization)

    # Hodge index: D^2 L^2 <= (D.L)^2 for every class, since L^2 > 0
    if square * l_sq > degree * degree:
        return CensusResult(degree, square, orient, (),
                            note="hodge-index-excluded")

    ctx = _context(pl)
    if not ctx.ok or degree % ctx.gcd_step != 0:
        return CensusResult(degree, square, orient, (),
                            note="degree-not-representable")
    scale = degree // ctx.gcd_step
    x0 = tuple(scale * v for v in ctx.v1)

    if ctx.m == 0:
        cands = [x0] if lat.square(x0) == square else []
    else:
        m = ctx.m
        kernel = ctx.kernel
        rows, minors = ctx.rows, ctx.minors
        det_m = ctx.det_m
        c_hat = [scale * c for c in ctx.c_hat_base]
        c0 = scale * scale * ctx.c0_base
        # radius = u . center - (square - c0) = r_tilde / det_m; the
        # descent runs over Y = det_m * t - c_hat, and q(Y) = det_m^2 *
        # q(y), so the scaled budget is det_m^2 * radius.
        r_tilde = scale * scale * ctx.uc_base - (square - c0) * det_m
        if r_tilde < 0:
            return CensusResult(degree, square, orient, ())
        lam, coef = ctx.lam, ctx.coef
        cands = []
        t_vec = [0] * m
        y_vec = [0] * m  # Y_j = det_m * t_j - c_hat_j

        def descend(i: int, rem: int):
            # rem = lam * (remaining scaled budget), always >= 0
            if i < 0:
                if rem == 0:
                    coords = tuple(
                        x0[r] + sum(t_vec[j] * kernel[j][r]
                                    for j in range(m))
                        for r in range(n))
                    cands.append(coords)
                return
            row = rows[i]
            sigma = 0
            for j in range(i + 1, m):
                sigma += row[j] * y_vec[j]
            # rho_i = row[i] * Y_i + sigma = w t_i - v
            w = row[i] * det_m
            v = row[i] * c_hat[i] - sigma
            ci = coef[i]
            lo = _lo_root(v, w, rem, ci)
            hi = _hi_root(v, w, rem, ci)
            for t in range(lo, hi + 1):
                t_vec[i] = t
                y_vec[i] = det_m * t - c_hat[i]
                rho = w * t - v
                descend(i - 1, rem - rho * rho * ci)

        descend(m - 1, r_tilde * det_m * lam)

    out = []
    for coords in cands:
        d_cls = DivisorClass(coords)
        if d_cls.is_zero():
            continue
        if lat.square(d_cls) != square or pl.degree(d_cls) != degree:
            continue  # exact leaf re-check against the Gram matrix
        hd = pl.h_degree(d_cls)
        if orient == "nonneg" and hd < 0:
            continue
        if orient == "positive" and hd <= 0:
            continue
        out.append(tuple(coords))
    out.sort()
    return CensusResult(degree, square, orient, tuple(out))

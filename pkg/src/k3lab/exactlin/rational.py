"""Exact linear algebra over Q: rank, kernel, determinant, signature.

Forward elimination is fraction-free (Bareiss) on row-scaled integer
matrices, so intermediate entries stay integral; kernels and signatures
come out exact.  Matrices here are small (lattice ranks up to ~12), so
clarity beats asymptotics.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from ..errors import DimensionMismatch, NotSquare, NotSymmetric


class RationalMatrix:
    """Immutable rectangular matrix of Fractions."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows):
        coerced = tuple(tuple(Fraction(x) for x in row) for row in rows)
        if coerced and any(len(r) != len(coerced[0]) for r in coerced):
            raise DimensionMismatch("ragged rows")
        self.rows = coerced
        self.nrows = len(coerced)
        self.ncols = len(coerced[0]) if coerced else 0

    def __eq__(self, other):
        return isinstance(other, RationalMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"RationalMatrix({[list(map(str, r)) for r in self.rows]})"


def _to_integer_rows(rows):
    """Scale each row by the lcm of denominators: kernel/rank unchanged."""
    out = []
    for row in rows:
        row = [Fraction(x) for x in row]
        mult = lcm(*(f.denominator for f in row)) if row else 1
        out.append([int(f * mult) for f in row])
    return out


def _bareiss_echelon(rows):
    """Fraction-free elimination; returns (echelon rows, pivot columns).

    Rows below each pivot are eliminated with the Bareiss update
    a[i][j] = (a[i][j]*piv - a[i][pc]*a[pr][j]) / prev_piv, which stays
    integral.  Column order is left to right, pivot = first row with a
    nonzero entry.
    """
    a = [list(r) for r in rows]
    m = len(a)
    n = len(a[0]) if a else 0
    pivots = []
    prev = 1
    r = 0
    for c in range(n):
        if r >= m:
            break
        sel = None
        for i in range(r, m):
            if a[i][c] != 0:
                sel = i
                break
        if sel is None:
            continue
        if sel != r:
            a[r], a[sel] = a[sel], a[r]
        piv = a[r][c]
        for i in range(r + 1, m):
            for j in range(c + 1, n):
                a[i][j] = (a[i][j] * piv - a[i][c] * a[r][j]) // prev
            a[i][c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank_kernel_rational(matrix):
    """(rank, kernel basis) of a matrix over Q.

    Kernel vectors are canonical: one per free column f (ascending), with
    coordinate 1 at f and back-substituted Fractions at the pivots.
    """
    if isinstance(matrix, RationalMatrix):
        rows = matrix.rows
        n = matrix.ncols
    else:
        rm = RationalMatrix(matrix)
        rows, n = rm.rows, rm.ncols
    if not rows:
        return 0, [tuple(Fraction(1) if j == f else Fraction(0)
                         for j in range(n)) for f in range(n)]
    int_rows = _to_integer_rows(rows)
    ech, pivots = _bareiss_echelon(int_rows)
    rank = len(pivots)
    pivset = set(pivots)
    free = [j for j in range(n) if j not in pivset]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        # back-substitute pivot coordinates from the bottom row up
        for t in range(rank - 1, -1, -1):
            pc = pivots[t]
            s = sum(Fraction(ech[t][j]) * v[j] for j in range(pc + 1, n))
            v[pc] = -s / ech[t][pc]
        basis.append(tuple(v))
    return rank, basis


def det_int(rows) -> int:
    """Determinant of a square integer matrix (Bareiss, exact)."""
    a = [[int(x) for x in row] for row in rows]
    n = len(a)
    if any(len(r) != n for r in a):
        raise NotSquare("determinant needs a square matrix")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for c in range(n - 1):
        sel = None
        for i in range(c, n):
            if a[i][c] != 0:
                sel = i
                break
        if sel is None:
            return 0
        if sel != c:
            a[c], a[sel] = a[sel], a[c]
            sign = -sign
        piv = a[c][c]
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                a[i][j] = (a[i][j] * piv - a[i][c] * a[c][j]) // prev
            a[i][c] = 0
        prev = piv
    return sign * a[n - 1][n - 1]


def _validate_symmetric(gram):
    rows = [[Fraction(x) for x in row] for row in gram]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise NotSquare("Gram matrix must be square")
    for i in range(n):
        for j in range(i + 1, n):
            if rows[i][j] != rows[j][i]:
                raise NotSymmetric(f"entry ({i},{j}) != ({j},{i})")
    return rows, n


def signature(gram):
    """Signature (n_plus, n_minus, n_zero) of a symmetric matrix over Q.

    Congruence diagonalization: nonzero diagonal entries are used as
    pivots directly; when the active diagonal is all zero but some
    off-diagonal entry b = a[k][l] survives, the {k,l} block [[0,b],[b,0]]
    contributes (1,1) and the complement is corrected by
    a[m][n] -= (a[m][k]*a[l][n] + a[m][l]*a[k][n]) / b.
    """
    a, n = _validate_symmetric(gram)
    active = list(range(n))
    n_plus = n_minus = n_zero = 0
    while active:
        pivot_idx = None
        for k in active:
            if a[k][k] != 0:
                pivot_idx = k
                break
        if pivot_idx is not None:
            k = pivot_idx
            d = a[k][k]
            if d > 0:
                n_plus += 1
            else:
                n_minus += 1
            rest = [m for m in active if m != k]
            for m in rest:
                for nn in rest:
                    a[m][nn] = a[m][nn] - a[m][k] * a[k][nn] / d
            active = rest
            continue
        off = None
        for ki, k in enumerate(active):
            for l in active[ki + 1:]:
                if a[k][l] != 0:
                    off = (k, l)
                    break
            if off:
                break
        if off is None:
            n_zero += len(active)
            break
        k, l = off
        b = a[k][l]
        n_plus += 1
        n_minus += 1
        rest = [m for m in active if m not in (k, l)]
        new = {m: {} for m in rest}
        for m in rest:
            for nn in rest:
                new[m][nn] = a[m][nn] - (a[m][k] * a[l][nn]
                                         + a[m][l] * a[k][nn]) / b
        for m in rest:
            for nn in rest:
                a[m][nn] = new[m][nn]
        active = rest
    return (n_plus, n_minus, n_zero)


def primitive_vector(vec):
    """Scale an integer vector by 1/gcd; fixes sign so the first nonzero
    entry is positive.  Zero vector is returned unchanged."""
    ints = [int(x) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g == 0:
        return tuple(ints)
    ints = [x // g for x in ints]
    for x in ints:
        if x != 0:
            if x < 0:
                ints = [-y for y in ints]
            break
    return tuple(ints)

"""Even hyperbolic lattices with a marked polarization.

A GramLattice is an integer symmetric pairing on Z^n given by its Gram
matrix; a PolarizedLattice adds a polarization class L of positive square
and a reference nef class h used to orient effective cones.  Divisor
classes are integer coordinate vectors in the fixed basis.
"""

from __future__ import annotations

from math import comb, gcd

from ..errors import (DimensionMismatch, HypothesisViolated, NotHyperbolic,
                      NotPositive, NotSquare, NotSymmetric, NotUnimodular,
                      OddSquare, UnsupportedDimension)
from ..exactlin import det_int, signature


class DivisorClass:
    """Integer divisor class in a fixed lattice basis."""

    __slots__ = ("coords",)

    def __init__(self, coords):
        self.coords = tuple(int(x) for x in coords)

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __eq__(self, other):
        if isinstance(other, DivisorClass):
            return self.coords == other.coords
        return NotImplemented

    def __hash__(self):
        return hash(self.coords)

    def __add__(self, other):
        return DivisorClass(a + b for a, b in zip(self.coords,
                                                  _coords(other)))

    def __sub__(self, other):
        return DivisorClass(a - b for a, b in zip(self.coords,
                                                  _coords(other)))

    def __neg__(self):
        return DivisorClass(-a for a in self.coords)

    def __mul__(self, n: int):
        return DivisorClass(n * a for a in self.coords)

    __rmul__ = __mul__

    def is_zero(self):
        return all(a == 0 for a in self.coords)

    def is_primitive(self):
        g = 0
        for a in self.coords:
            g = gcd(g, abs(a))
        return g == 1

    def __repr__(self):
        return f"DivisorClass{self.coords}"


def _coords(obj):
    if isinstance(obj, DivisorClass):
        return obj.coords
    return tuple(int(x) for x in obj)


class GramLattice:
    """Integer lattice with symmetric pairing, fixed basis and labels."""

    def __init__(self, gram, labels=None):
        rows = tuple(tuple(int(x) for x in row) for row in gram)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise NotSquare("Gram matrix must be square")
        for i in range(n):
            for j in range(i + 1, n):
                if rows[i][j] != rows[j][i]:
                    raise NotSymmetric(f"entries ({i},{j}) and ({j},{i})")
        self.gram = rows
        self.rank = n
        if labels is None:
            labels = tuple(f"e{i}" for i in range(n))
        labels = tuple(str(x) for x in labels)
        if len(labels) != n:
            raise DimensionMismatch("label count != rank")
        self.labels = labels
        self._sig = None

    def pairing(self, a, b) -> int:
        ca, cb = _coords(a), _coords(b)
        if len(ca) != self.rank or len(cb) != self.rank:
            raise DimensionMismatch("class length != rank")
        g = self.gram
        return sum(ca[i] * g[i][j] * cb[j]
                   for i in range(self.rank) for j in range(self.rank))

    def square(self, a) -> int:
        return self.pairing(a, a)

    def signature(self):
        if self._sig is None:
            self._sig = signature(self.gram)
        return self._sig

    def is_hyperbolic(self) -> bool:
        return self.signature() == (1, self.rank - 1, 0)

    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def divisor(self, coords) -> DivisorClass:
        c = _coords(coords)
        if len(c) != self.rank:
            raise DimensionMismatch("class length != rank")
        return DivisorClass(c)

    def __eq__(self, other):
        return (isinstance(other, GramLattice) and self.gram == other.gram
                and self.labels == other.labels)

    def __repr__(self):
        return f"GramLattice(rank={self.rank}, labels={self.labels})"


class PolarizedLattice:
    """GramLattice plus polarization L (L^2 > 0) and reference nef class h."""

    def __init__(self, lattice: GramLattice, polarization, reference_nef=None):
        self.lattice = lattice
        self.polarization = lattice.divisor(polarization)
        if lattice.square(self.polarization) <= 0:
            raise NotPositive("polarization must have positive square")
        if reference_nef is None:
            reference_nef = self.polarization
        self.reference_nef = lattice.divisor(reference_nef)
        if lattice.pairing(self.reference_nef, self.polarization) <= 0:
            raise NotPositive("reference nef class must pair positively "
                              "with the polarization")

    @property
    def gram(self):
        return self.lattice.gram

    @property
    def rank(self):
        return self.lattice.rank

    def pairing(self, a, b) -> int:
        return self.lattice.pairing(a, b)

    def square(self, a) -> int:
        return self.lattice.square(a)

    def degree(self, a) -> int:
        return self.lattice.pairing(a, self.polarization)

    def h_degree(self, a) -> int:
        return self.lattice.pairing(a, self.reference_nef)

    def genus(self) -> int:
        sq = self.square(self.polarization)
        if sq % 2:
            raise OddSquare("polarization square must be even")
        return sq // 2 + 1

    def divisor(self, coords) -> DivisorClass:
        return self.lattice.divisor(coords)

    def __repr__(self):
        return (f"PolarizedLattice(rank={self.rank}, "
                f"L={self.polarization.coords}, "
                f"h={self.reference_nef.coords})")


def rr_chi(pl, d) -> int:
    """Euler characteristic 2 + D^2/2 of a divisor class on a K3."""
    sq = pl.square(d) if isinstance(pl, (GramLattice, PolarizedLattice)) \
        else int(d)
    if sq % 2:
        raise OddSquare(f"class has odd square {sq}")
    return 2 + sq // 2


def h0_lower_bound(square: int) -> int:
    """max(1, chi) = max(1, 2 + D^2/2): sections of an effective class."""
    if square % 2:
        raise OddSquare(f"odd square {square}")
    return max(1, 2 + square // 2)


def hodge_index_check(pl, a, b) -> bool:
    """True iff a^2 b^2 <= (a.b)^2; requires a^2 > 0."""
    a2 = pl.square(a)
    if a2 <= 0:
        raise NotPositive("hodge_index_check needs a class of positive "
                          "square as first argument")
    b2 = pl.square(b)
    ab = pl.pairing(a, b)
    return a2 * b2 <= ab * ab


def basis_change_check(lattice: GramLattice, basis, expected_gram) -> bool:
    """True iff the matrix with the given *columns* as new basis vectors
    is unimodular and conjugates the Gram matrix to expected_gram."""
    cols = [list(map(int, c)) for c in basis]
    n = lattice.rank
    if len(cols) != n or any(len(c) != n for c in cols):
        raise DimensionMismatch("need rank many basis vectors")
    mat = [[cols[j][i] for j in range(n)] for i in range(n)]  # column layout
    if abs(det_int(mat)) != 1:
        raise NotUnimodular("basis change matrix must have det +-1")
    got = [[lattice.pairing(cols[i], cols[j]) for j in range(n)]
           for i in range(n)]
    want = [[int(x) for x in row] for row in expected_gram]
    return got == want


def moduli_dimensions(lattice: GramLattice, g: int):
    """(dim of the lattice-polarized family, dim of the pencil-marked one).

    The family dimension is 20 - rank; marking a pencil whose members move
    in genus-g polarizations adds g parameters.
    """
    if not lattice.is_hyperbolic():
        raise NotHyperbolic("moduli dimensions need a hyperbolic lattice")
    if lattice.rank > 20:
        raise UnsupportedDimension("rank exceeds 20")
    dim_f = 20 - lattice.rank
    return dim_f, dim_f + int(g)


def genus4_global_count() -> dict:
    """Parameter count for complete intersections of a quadric and cubic
    in P^4: quadrics + cubics - dim PGL_5 = 14 + 29 - 24 = 19.

    The cubic count removes multiples of the quadric (5 linear forms)."""
    quadrics = comb(4 + 2, 2) - 1
    cubics = comb(4 + 3, 3) - 1 - 5
    pgl = 5 * 5 - 1
    return {"quadrics": quadrics, "cubics": cubics, "pgl": pgl,
            "total": quadrics + cubics - pgl}


def lm_invariants(g: int, d: int, r: int = 1) -> dict:
    """Numerical invariants of the rank r+1 sheaf attached to a degree-d
    pencil computed at genus g, with the slope comparison that witnesses
    instability.

    Requires d <= g - 1: beyond that the subsheaf slope test says nothing.
    """
    g, d, r = int(g), int(d), int(r)
    if g < 2 or d < 1 or r < 1:
        raise HypothesisViolated("need g >= 2, d >= 1, r >= 1")
    if d > g - 1:
        raise HypothesisViolated(f"need d <= g - 1, got d = {d}, g = {g}")
    rank = r + 1
    c1_sq = 2 * g - 2
    c2 = d
    chi = 2 * rank + (c1_sq - 2 * c2) // 2
    mu_sub = 2 * g - 2 - d
    mu_bundle = g - 1
    verdict = ("strictly-semistable-witness" if mu_sub == mu_bundle
               else "unstable-witness")
    return {"rank": rank, "c1_sq": c1_sq, "c2": c2, "chi": chi,
            "mu_sub": mu_sub, "mu_bundle": mu_bundle, "verdict": verdict}


def bordered_gram(g: int, d: int, mutual: int, n: int):
    """n x n matrix: corner 2g-2, first row/col d, off-diagonal mutual,
    zero diagonal elsewhere."""
    if n < 1:
        raise DimensionMismatch("n must be >= 1")
    out = [[0] * n for _ in range(n)]
    out[0][0] = 2 * g - 2
    for i in range(1, n):
        out[0][i] = out[i][0] = d
        for j in range(1, n):
            if i != j:
                out[i][j] = mutual
    return out


def max_admissible_size(g: int, d: int, mutual: int, limit: int = 40) -> int:
    """Largest n with bordered_gram(g, d, mutual, n) of signature (1, n-1).

    Scans n upward and stops at the first failure; hyperbolicity is never
    recovered after adding rows, since each matrix embeds in the next."""
    best = 0
    for n in range(1, limit + 1):
        sig = signature(bordered_gram(g, d, mutual, n))
        if sig == (1, n - 1, 0):
            best = n
        else:
            return best
    return best

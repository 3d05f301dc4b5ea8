"""Finite fields F_{p^k} with vectorized arithmetic on encoded elements.

Elements are integers in [0, q): the element sum(c_i * a^i) with digits
c_i base p is encoded as sum(c_i * p^i), where a is the class of x modulo
the modulus polynomial.  Prime fields (k = 1) use plain mod-p numpy ops;
extension fields get exp/log tables over a primitive element, built
lazily, so array operations work for every supported q < 2^16.

The modulus, when not supplied, is the first monic irreducible polynomial
of degree k in increasing order of its encoded coefficient integer
sum(c_i * p^i); irreducibility is checked with Rabin's test.
"""

from __future__ import annotations

import numpy as np

from ..errors import (DimensionMismatch, NonPrimeModulus, ReducibleModulus,
                      UnsupportedField)
from .. import _kernels

_P_LIMIT = 1 << 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _prime_factors(n: int):
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return out


# polynomial arithmetic over F_p; little-endian coefficient lists,
# normalized with no trailing zeros


def _ptrim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, f, p):
    """a mod f, f monic."""
    a = [x % p for x in a]
    df = len(f) - 1
    while len(a) > df:
        c = a[-1]
        if c:
            off = len(a) - 1 - df
            for i in range(df):
                a[off + i] = (a[off + i] - c * f[i]) % p
        a.pop()
    return _ptrim(a)


def _pmulmod(a, b, f, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = (out[i + j] + x * y) % p
    return _pmod(out, f, p)


def _ppowmod(a, e, f, p):
    result = [1]
    base = _pmod(list(a), f, p)
    while e > 0:
        if e & 1:
            result = _pmulmod(result, base, f, p)
        base = _pmulmod(base, base, f, p)
        e >>= 1
    return result


def _psub(a, b, p):
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] = x
    for i, y in enumerate(b):
        out[i] = (out[i] - y) % p
    return _ptrim(out)


def _pgcd(a, b, p):
    a = _ptrim([x % p for x in a])
    b = _ptrim([x % p for x in b])
    while b:
        # a mod b with b made monic
        inv = pow(b[-1], p - 2, p)
        bm = [(x * inv) % p for x in b]
        a = _pmod(a, bm, p)
        a, b = b, a
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [(x * inv) % p for x in a]
    return a


def is_irreducible(coeffs, p: int) -> bool:
    """Rabin's irreducibility test for a monic polynomial over F_p."""
    f = [c % p for c in coeffs]
    k = len(f) - 1
    if k < 1 or f[-1] != 1:
        return False
    if k == 1:
        return True
    x = [0, 1]
    for r in _prime_factors(k):
        h = _ppowmod(x, p ** (k // r), f, p)
        if _pgcd(_psub(h, x, p), f, p) != [1]:
            return False
    h = _ppowmod(x, p ** k, f, p)
    return _psub(h, x, p) == []


class FiniteField:
    """The field with p^k elements; elements are encoded integers."""

    def __init__(self, p: int, k: int = 1, modulus=None):
        p = int(p)
        k = int(k)
        if not is_prime(p):
            raise NonPrimeModulus(f"{p} is not prime")
        if p >= _P_LIMIT:
            raise UnsupportedField(f"p = {p} exceeds 2^16")
        if k < 1:
            raise UnsupportedField("k must be >= 1")
        self.p = p
        self.k = k
        self.q = p ** k
        if modulus is None:
            modulus = self._find_modulus(p, k)
        else:
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != k + 1 or modulus[-1] != 1:
                raise ReducibleModulus("modulus must be monic of degree k")
            if not is_irreducible(list(modulus), p):
                raise ReducibleModulus("modulus is reducible")
        self.modulus = tuple(modulus)
        self._tables = None
        self._sqrt = None

    @staticmethod
    def _find_modulus(p: int, k: int):
        if k == 1:
            return (0, 1)
        for enc in range(p ** k):
            coeffs = []
            e = enc
            for _ in range(k):
                coeffs.append(e % p)
                e //= p
            coeffs.append(1)
            if is_irreducible(coeffs, p):
                return tuple(coeffs)
        raise ReducibleModulus("no irreducible polynomial found")  # unreachable

    # ------------------------------------------------------------------
    def __eq__(self, other):
        return (isinstance(other, FiniteField)
                and (self.p, self.k, self.modulus)
                == (other.p, other.k, other.modulus))

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        if self.k == 1:
            return f"FiniteField({self.p})"
        return f"FiniteField({self.p}, {self.k}, modulus={list(self.modulus)})"

    def describe(self) -> dict:
        return {"p": self.p, "k": self.k, "modulus": list(self.modulus)}

    # scalar arithmetic ------------------------------------------------
    def _digits(self, a: int):
        out = []
        for _ in range(self.k):
            out.append(a % self.p)
            a //= self.p
        return out

    def _encode(self, digits) -> int:
        enc = 0
        for c in reversed(list(digits)):
            enc = enc * self.p + (c % self.p)
        return enc

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        return self._encode(x + y for x, y in zip(self._digits(a),
                                                  self._digits(b)))

    def sub(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a - b) % self.p
        return self._encode(x - y for x, y in zip(self._digits(a),
                                                  self._digits(b)))

    def neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        return self._encode(-x for x in self._digits(a))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a * b) % self.p
        prod = _pmulmod(self._digits(a), self._digits(b),
                        list(self.modulus), self.p)
        return self._encode(prod + [0] * (self.k - len(prod)))

    def inv(self, a: int) -> int:
        if a % self.q == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        return self.pow(a, self.q - 2)

    def pow(self, a: int, e: int) -> int:
        e = int(e)
        if e < 0:
            return self.pow(self.inv(a), -e)
        r = _ppowmod(self._digits(a), e, list(self.modulus), self.p)
        return self._encode(r + [0] * (self.k - len(r)))

    def elements(self):
        return range(self.q)

    # square roots (table based; q < 2^16 always holds for k = 1) ------
    def sqrt(self, a: int):
        """A square root of a, or None.  Table-based."""
        if self._sqrt is None:
            table = {}
            for x in range(self.q):
                sq = self.mul(x, x)
                table.setdefault(sq, x)
            self._sqrt = table
        return self._sqrt.get(a % self.q)

    # vectorized arithmetic -------------------------------------------
    def _build_tables(self):
        if self.q > _P_LIMIT:
            raise UnsupportedField(
                f"array ops unsupported for q = {self.q} > 2^16")
        q = self.q
        dig = np.zeros((q, self.k), dtype=np.int64)
        vals = np.arange(q)
        for i in range(self.k):
            dig[:, i] = vals % self.p
            vals = vals // self.p
        powers = np.array([self.p ** i for i in range(self.k)],
                          dtype=np.int64)
        # primitive element by order testing
        fac = _prime_factors(q - 1)
        g = None
        for cand in range(2, q):
            if all(self.pow(cand, (q - 1) // r) != 1 for r in fac):
                g = cand
                break
        if g is None:  # q = 2
            g = 1
        exp = np.zeros(2 * (q - 1), dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        acc = 1
        for i in range(q - 1):
            exp[i] = acc
            exp[i + q - 1] = acc
            log[acc] = i
            acc = self.mul(acc, g)
        self._tables = {"dig": dig, "pow": powers, "exp": exp, "log": log,
                        "gen": g}

    def _tab(self):
        if self._tables is None:
            self._build_tables()
        return self._tables

    def add_arr(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.k == 1:
            return (a + b) % self.p
        t = self._tab()
        d = (t["dig"][a] + t["dig"][b]) % self.p
        return d @ t["pow"]

    def sub_arr(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.k == 1:
            return (a - b) % self.p
        t = self._tab()
        d = (t["dig"][a] - t["dig"][b]) % self.p
        return d @ t["pow"]

    def neg_arr(self, a):
        a = np.asarray(a, dtype=np.int64)
        if self.k == 1:
            return (-a) % self.p
        t = self._tab()
        d = (-t["dig"][a]) % self.p
        return d @ t["pow"]

    def mul_arr(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.k == 1:
            return (a * b) % self.p
        t = self._tab()
        a, b = np.broadcast_arrays(a, b)
        out = np.zeros(a.shape, dtype=np.int64)
        nz = (a != 0) & (b != 0)
        out[nz] = t["exp"][t["log"][a[nz]] + t["log"][b[nz]]]
        return out

    def inv_arr(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a % self.q == 0):
            raise ZeroDivisionError("inverse of zero")
        if self.k == 1:
            return np.array([pow(int(x), self.p - 2, self.p)
                             for x in a.reshape(-1)],
                            dtype=np.int64).reshape(a.shape)
        t = self._tab()
        return t["exp"][(self.q - 1 - t["log"][a]) % (self.q - 1)]


class FieldMatrix:
    """Matrix over a FiniteField; entries are encoded ints in [0, q)."""

    def __init__(self, field: FiniteField, rows):
        self.field = field
        try:
            a = np.asarray(rows, dtype=np.int64)
        except ValueError:
            raise DimensionMismatch("ragged rows") from None
        if a.ndim != 2:
            raise DimensionMismatch("FieldMatrix expects a 2-d array")
        if field.k == 1:
            a = a % field.p
        elif a.size and (a.min() < 0 or a.max() >= field.q):
            raise DimensionMismatch("entries must be encoded in [0, q)")
        self.a = a

    @property
    def shape(self):
        return self.a.shape

    def rank_kernel(self):
        """(rank, kernel basis): canonical, free columns ascending."""
        f = self.field
        if f.k == 1:
            r, _ = _kernels.rref(self.a, f.p)
            basis = _kernels.nullspace(self.a, f.p)
            return int(r.shape[0]), [tuple(int(x) for x in row)
                                     for row in basis]
        return self._rank_kernel_ext()

    def _rank_kernel_ext(self):
        f = self.field
        rows = [list(map(int, r)) for r in self.a]
        m = len(rows)
        n = self.a.shape[1]
        pivots = []
        r = 0
        for c in range(n):
            if r >= m:
                break
            sel = None
            for i in range(r, m):
                if rows[i][c] != 0:
                    sel = i
                    break
            if sel is None:
                continue
            rows[r], rows[sel] = rows[sel], rows[r]
            inv = f.inv(rows[r][c])
            rows[r] = [f.mul(inv, x) for x in rows[r]]
            for i in range(m):
                if i != r and rows[i][c] != 0:
                    coef = rows[i][c]
                    rows[i] = [f.sub(x, f.mul(coef, y))
                               for x, y in zip(rows[i], rows[r])]
            pivots.append(c)
            r += 1
        pivset = set(pivots)
        free = [j for j in range(n) if j not in pivset]
        basis = []
        for fr in free:
            v = [0] * n
            v[fr] = 1
            for t, pc in enumerate(pivots):
                v[pc] = f.neg(rows[t][fr])
            basis.append(tuple(v))
        return len(pivots), basis

"""Deterministic random stream for the construction pipelines.

Every pipeline draws all of its randomness from one Rng seeded by a
user-visible 64-bit integer, so a report can be replayed bit for bit.
The core generator is splitmix64: stateless apart from a counter, fast,
and with well-understood equidistribution for this use (sampling small
finite fields).
"""

from __future__ import annotations

from ..errors import DependentVectors
from ..exactlin import FiniteField

_MASK = (1 << 64) - 1


class Rng:
    """splitmix64 stream with helpers for field-valued draws."""

    __slots__ = ("seed", "_state")

    def __init__(self, seed: int):
        self.seed = int(seed) & _MASK
        self._state = self.seed

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform-ish draw in [0, bound); bias is < bound / 2**64."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        return self.next_u64() % bound

    def element(self, field: FiniteField) -> int:
        return self.below(field.q)

    def nonzero_element(self, field: FiniteField) -> int:
        while True:
            x = self.below(field.q)
            if x != 0:
                return x

    def vector(self, field: FiniteField, n: int) -> list:
        return [self.below(field.q) for _ in range(n)]

    def nonzero_vector(self, field: FiniteField, n: int) -> list:
        while True:
            v = self.vector(field, n)
            if any(v):
                return v

    def independent_pair(self, field: FiniteField, n: int):
        """Two vectors spanning a 2-dimensional subspace of F_q^n."""
        for _ in range(200):
            u = self.nonzero_vector(field, n)
            v = self.nonzero_vector(field, n)
            if _pair_rank(field, u, v) == 2:
                return u, v
        raise DependentVectors("could not draw an independent pair")

    def coefficients(self, field: FiniteField, count: int) -> list:
        """count field elements, not all zero."""
        while True:
            c = self.vector(field, count)
            if any(c):
                return c


def _pair_rank(field: FiniteField, u, v) -> int:
    """Rank of the 2 x n matrix [u; v] over the field."""
    for i in range(len(u)):
        for j in range(i + 1, len(u)):
            d = field.sub(field.mul(u[i], v[j]), field.mul(u[j], v[i]))
            if d != 0:
                return 2
    return 1

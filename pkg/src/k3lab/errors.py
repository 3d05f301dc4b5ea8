"""Exception types shared across the package.

Every failure mode that a caller can act on gets its own class; generic
ValueError/TypeError are reserved for plain programming mistakes.
"""


class K3labError(Exception):
    """Base class for all package-specific errors."""


class DimensionMismatch(K3labError):
    pass


class NotSymmetric(K3labError):
    pass


class NotSquare(K3labError):
    pass


class NonPrimeModulus(K3labError):
    pass


class ReducibleModulus(K3labError):
    pass


class UnsupportedField(K3labError):
    pass


class NotHyperbolic(K3labError):
    """Gram matrix does not have signature (1, n-1, 0)."""


class NotUnimodular(K3labError):
    pass


class NotIsotropic(K3labError):
    """Class was required to have square zero."""


class ZeroDegree(K3labError):
    """Class was required to have nonzero degree against the polarization."""


class OddSquare(K3labError):
    """Even lattice arithmetic received a class of odd self-intersection."""


class NotPositive(K3labError):
    """Hodge-style inequality needs a class of positive square."""


class HypothesisViolated(K3labError):
    """Numerical preconditions of a lemma-level computation fail."""


class AmplenessNotCertified(K3labError):
    pass


class UnsupportedDimension(K3labError):
    pass


class DependentVectors(K3labError):
    pass


class CapExceeded(K3labError):
    """An enumeration would exceed the configured point cap."""


class NotStabilized(K3labError):
    """A degree-by-degree computation failed to stabilize below the bound."""


class NotOnVariety(K3labError):
    pass


class SpanDegenerate(K3labError):
    """Seed points failed to span the expected linear subspace."""


class SingularSurface(K3labError):
    """A sampled point violated the expected Jacobian rank."""


class VertexOnSurface(K3labError):
    """The cone vertex accidentally lies on the cut surface."""


class NonSplitQuadric(K3labError):
    """A ruled-quadric computation needs a quadric of split type."""


class ExtraDualPoints(K3labError):
    """A dual linear section met the Grassmannian in more than the seeded points."""


class ResidualSpanWrongDim(K3labError):
    """The residual divisor span has unexpected projective dimension."""


class RetryExhausted(K3labError):
    """The seeded retry budget ran out without a passing construction."""


class SeedMismatch(K3labError):
    """A report replay was asked to run with data inconsistent with the report."""

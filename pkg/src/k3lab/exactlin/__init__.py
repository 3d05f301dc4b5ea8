"""Exact linear algebra: rationals, integers, finite fields."""

from .rational import (RationalMatrix, det_int, primitive_vector,
                       rank_kernel_rational, signature)
from .intsolve import integer_solve_affine, is_unimodular, smith_normal_form
from .finitefield import FieldMatrix, FiniteField, is_irreducible, is_prime


def rank_kernel(matrix):
    """(rank, kernel basis) over the matrix's own field.

    FieldMatrix inputs reduce over F_{p^k}; everything else is treated as
    a matrix over Q.
    """
    if isinstance(matrix, FieldMatrix):
        return matrix.rank_kernel()
    return rank_kernel_rational(matrix)


__all__ = [
    "RationalMatrix", "FieldMatrix", "FiniteField",
    "rank_kernel", "rank_kernel_rational", "signature", "det_int",
    "primitive_vector", "integer_solve_affine", "smith_normal_form",
    "is_unimodular", "is_irreducible", "is_prime",
]

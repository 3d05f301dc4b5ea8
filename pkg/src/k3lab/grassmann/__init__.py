"""Plucker geometry of G(2,n), linear sections and graded-ideal tools."""

from .plucker import (PluckerSystem, complement_signs,
                      enumerate_grassmannian, gaussian_binomial_points,
                      iter_reduced_bases, normalize_point, plucker_embed,
                      plucker_relations, plucker_system,
                      schubert_hyperplane, subspace_meets)
from .subspace import LinearSubspace, annihilator, span_of_points
from .ideals import (GradedIdeal, Poly, colon_linear_span, hilbert_function,
                     iter_projective_chunks, jacobian_rank_at,
                     linear_section_ideal, monomials,
                     projective_point_count, rational_points, restrict_ideal,
                     sum_ideals)

__all__ = [
    "PluckerSystem", "LinearSubspace", "GradedIdeal", "Poly",
    "plucker_system", "plucker_relations", "plucker_embed",
    "normalize_point", "enumerate_grassmannian", "iter_reduced_bases",
    "gaussian_binomial_points", "schubert_hyperplane", "subspace_meets",
    "complement_signs", "annihilator", "span_of_points",
    "linear_section_ideal", "restrict_ideal", "sum_ideals",
    "hilbert_function", "colon_linear_span", "rational_points",
    "projective_point_count", "jacobian_rank_at", "monomials",
    "iter_projective_chunks",
]

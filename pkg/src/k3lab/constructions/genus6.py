"""Genus-6 pipeline: a degree-10 K3 with five pencils of quartic curves.

Four 2-subspaces of the dual space seed four hyperplane classes on the
Grassmannian of lines in P^4.  Their common zero space cuts a quintic
del Pezzo surface, whose cone meets a random quadric in the K3.  The
five conic pencils of the del Pezzo induce the surface's five elliptic
pencils; the fifth conic class is the residual point of the degree-5
dual intersection and is found by exhaustive search, which also proves
the census is complete over the base field.
"""

from __future__ import annotations

import numpy as np

from ..config import Config, DEFAULT
from ..errors import (DependentVectors, ExtraDualPoints, HypothesisViolated,
                      NotStabilized, RetryExhausted, SingularSurface,
                      SpanDegenerate)
from ..exactlin import FiniteField
from ..grassmann import (GradedIdeal, LinearSubspace, Poly, hilbert_function,
                         iter_projective_chunks, linear_section_ideal,
                         normalize_point, plucker_system, restrict_ideal)
from ..k3lattice import builtin, moduli_dimensions, pencil_census
from .common import (dual_point_basis, dual_seed_embed, hf_expected,
                     linear_forms_to_polys, on_grassmannian, pad_poly,
                     random_homogeneous_poly, restrict_form,
                     sample_smooth_points, stabilized_hf)
from .report import ConstructionReport, ReportBuilder
from .rng import Rng

_RETRYABLE = (SpanDegenerate, SingularSurface, ExtraDualPoints,
              DependentVectors, NotStabilized)

_DEL_PEZZO_HF = [(d, (5 * d * d + 5 * d) // 2 + 1) for d in range(1, 5)]
_K3_HF = [(d, 5 * d * d + 2) for d in range(1, 5)]
_MEMBER_HF = [4, 8, 12, 16]


def build_genus6(field: FiniteField, seed: int,
                 cfg: Config = DEFAULT) -> ConstructionReport:
    """Construct and verify the five-pencil degree-10 K3 over F_q, q >= 5."""
    if field.q < 5:
        raise HypothesisViolated("need q >= 5")
    rng = Rng(seed)
    last = None
    for _ in range(cfg.retry_bound):
        try:
            return _attempt_genus6(field, seed, rng, cfg)
        except _RETRYABLE as exc:
            last = exc
    raise RetryExhausted(
        f"genus-6 pipeline failed {cfg.retry_bound} attempts: {last}")


def _dual_census(field: FiniteField, sys5, dual_rows) -> list:
    """All points of span(dual seeds) on the dual Grassmannian.

    Exhaustive over the parametrizing P^3(F_q); complete by
    construction, so the residual fifth point cannot be missed.
    """
    q = field.q
    found = []
    for block in iter_projective_chunks(field, 4):
        for c in block:
            y = [0] * dual_rows.shape[1]
            for coeff, row in zip(c, dual_rows):
                cc = int(coeff) % q
                if cc == 0:
                    continue
                for j, r in enumerate(row):
                    if r:
                        y[j] = field.add(y[j], field.mul(cc, int(r)))
            if on_grassmannian(sys5, field, y):
                found.append(normalize_point(field, y))
    return found


def _member_subspace(field: FiniteField, sys5, p5: LinearSubspace,
                     wedge_rows) -> LinearSubspace:
    """Plane of one conic: the pencil's wedge forms restricted to P^5,
    lifted to the cone's P^6 (vertex coordinate last)."""
    rows = []
    for w in wedge_rows:
        rows.append(restrict_form(field, p5, w) + [0])
    sub = LinearSubspace.from_forms(field, 7, rows)
    if sub.projective_dim != 3:
        raise SingularSurface(
            f"conic cone has dimension {sub.projective_dim}, expected 3")
    return sub


def _attempt_genus6(field: FiniteField, seed: int, rng: Rng,
                    cfg: Config) -> ConstructionReport:
    builder = ReportBuilder("genus6", 6, field, seed)
    sys5 = plucker_system(5)

    bases, seeds = [], []
    for _ in range(4):
        pair, pt = dual_seed_embed(sys5, field, rng)
        bases.append(pair)
        seeds.append(pt)
    dual_rows = np.array(seeds, dtype=np.int64)
    span = LinearSubspace.from_points(field, 10, dual_rows)
    if span.points.shape[0] != 4:
        raise SpanDegenerate("the four dual seeds do not span a P^3")

    p5 = LinearSubspace.from_forms(field, 10, dual_rows)
    del_pezzo = linear_section_ideal(sys5, p5)
    builder.ideals["del_pezzo"] = del_pezzo.to_json()
    hf_expected(builder, "del-pezzo-hilbert-function", del_pezzo,
                _DEL_PEZZO_HF, SingularSurface("del Pezzo section degenerate"))

    census = _dual_census(field, sys5, span.points)
    seed_set = set(seeds)
    if len(census) != 5 or not seed_set.issubset(census):
        raise ExtraDualPoints(
            f"dual census has {len(census)} points, expected 5")
    builder.check("dual-census-rational-count", 5, len(census))
    fifth = next(pt for pt in census if pt not in seed_set)
    builder.note("residual-dual-point", list(fifth))
    census_ideal = linear_section_ideal(
        sys5, LinearSubspace.from_points(field, 10, dual_rows))
    length = stabilized_hf(census_ideal, start=2, cap=7)
    builder.require("dual-census-length-with-multiplicity", 5, length,
                    ExtraDualPoints("dual intersection not of length 5"))
    bases.append(dual_point_basis(field, 5, fifth))

    cone_gens = [pad_poly(g, 7) for g in del_pezzo.generators]
    quadric = None
    for _ in range(50):
        cand = random_homogeneous_poly(field, 7, 2, rng)
        if cand.terms.get((0, 0, 0, 0, 0, 0, 2)):
            quadric = cand
            break
    if quadric is None:
        raise SingularSurface("no quadric avoiding the cone vertex")
    surface = GradedIdeal.from_generators(cone_gens + [quadric])
    builder.ideals["surface"] = surface.to_json()
    hf_expected(builder, "surface-hilbert-function", surface, _K3_HF,
                SingularSurface("unexpected Hilbert function"))

    sampled = sample_smooth_points(surface, rng, cfg, expected_rank=4)
    builder.require("smoothness-sampled", True, len(sampled) > 0,
                    SingularSurface("no smooth sample points found"))
    builder.note("smoothness", f"sampled({len(sampled)} points)")

    members = []
    for idx, ((alpha, beta), pt) in enumerate(zip(bases, census_order(
            seeds, fifth))):
        wedge = _wedge_rows(field, sys5, alpha)
        sub = _member_subspace(field, sys5, p5, wedge)
        member = restrict_ideal(surface, sub)
        hf = [hilbert_function(member, d) for d in range(1, 5)]
        builder.require(f"pencil-{idx}-member-hilbert-function",
                        _MEMBER_HF, hf,
                        SingularSurface("member is not a quartic curve"))
        member_forms = [[int(x) for x in row] for row in sub.forms]
        builder.pencil(dual_point=list(pt),
                       member_sample={"span_forms": member_forms, "hf": hf},
                       degree=4)
        members.append(member_forms)

    for i in range(5):
        for j in range(i + 1, 5):
            cross = GradedIdeal.from_generators(
                list(surface.generators)
                + linear_forms_to_polys(field, members[i])
                + linear_forms_to_polys(field, members[j]))
            got = stabilized_hf(cross, start=2, cap=8)
            builder.require(f"cross-degree-{i}-{j}", 2, got,
                            SingularSurface("cross-pencil degree mismatch"))

    _lattice_crosschecks(builder)
    return builder.build()


def census_order(seeds, fifth) -> list:
    return list(seeds) + [fifth]


def _wedge_rows(field: FiniteField, sys_, ell):
    from .common import wedge_with_basis
    return wedge_with_basis(field, sys_, ell)


def _lattice_crosschecks(builder: ReportBuilder):
    pl = builtin("M6")
    census = pencil_census(pl, 4)
    builder.check("lattice-pencil-census-degree4", 5, census.count)
    total = [0] * 5
    for cls in census.classes:
        total = [a + b for a, b in zip(total, cls)]
    builder.check("lattice-pencil-classes-sum-to-2L", [2, 0, 0, 0, 0], total)
    builder.check("lattice-moduli-dimensions", [15, 21],
                  list(moduli_dimensions(pl.lattice, 6)))

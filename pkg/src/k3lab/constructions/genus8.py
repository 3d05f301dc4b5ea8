"""Genus-8 pipelines: linear sections of the Grassmannian of lines in P^5.

Both constructions cut a degree-14 K3 out of G(2,6) by a P^8 and read
its degree-5 elliptic pencils off the dual intersection: a pencil
corresponds to a decomposable point of the annihilator P^5 in the dual
Grassmannian, and the pencil member at a parameter value is the locus
of 2-spaces inside the kernel of the matching linear form.

build_genus8_secant seeds the dual P^5 through i chosen dual points
(the reverse of intersecting a random P^8), so the census is exactly i.
build_genus8_nine grows the P^5 as the span of a residual degree-9
divisor on a genus-8 curve section, which forces a census of nine.
"""

from __future__ import annotations

import numpy as np

from ..config import Config, DEFAULT
from ..errors import (DependentVectors, ExtraDualPoints, HypothesisViolated,
                      NotStabilized, ResidualSpanWrongDim, RetryExhausted,
                      SingularSurface, SpanDegenerate)
from ..exactlin import FiniteField
from ..grassmann import (GradedIdeal, LinearSubspace, colon_linear_span,
                         hilbert_function, linear_section_ideal,
                         normalize_point, plucker_embed, plucker_system,
                         rational_points, restrict_ideal, jacobian_rank_at)
from ..k3lattice import (builtin, max_admissible_size, moduli_dimensions,
                         pencil_census)
from .common import (dual_point_basis, dual_seed_embed, field_matmul,
                     hf_expected, lift_point, linear_forms_to_polys,
                     on_grassmannian, restrict_form, stabilized_hf,
                     subspace_coordinates, wedge_with_basis)
from .report import ConstructionReport, ReportBuilder
from .rng import Rng

_RETRYABLE = (SpanDegenerate, SingularSurface, ExtraDualPoints,
              DependentVectors, NotStabilized, ResidualSpanWrongDim)

_K3_HF = [(d, 7 * d * d + 2) for d in range(1, 5)]
_CURVE_HF = [(d, 14 * d - 7) for d in range(2, 6)]
_MEMBER_HF = [5, 10, 15, 20]


def build_genus8_secant(i: int, field: FiniteField, seed: int,
                        cfg: Config = DEFAULT) -> ConstructionReport:
    """K3 through a P^8 whose dual P^5 is i-secant to the dual G(2,6).

    i = 0 is rejected: with no forced dual point the construction is
    the plain generic linear section and carries no pencil bookkeeping.
    """
    if not 1 <= int(i) <= 6:
        raise HypothesisViolated(
            "need 1 <= i <= 6 (for i = 0 take a generic linear section; "
            "i = 7, 8 are not known to occur)")
    if field.q < 11:
        raise HypothesisViolated("need q >= 11")
    rng = Rng(seed)
    last = None
    for _ in range(cfg.retry_bound):
        try:
            return _attempt_secant(int(i), field, seed, rng, cfg)
        except _RETRYABLE as exc:
            last = exc
    raise RetryExhausted(
        f"genus-8 secant-{i} pipeline failed {cfg.retry_bound} "
        f"attempts: {last}")


def search_genus8_configuration(i: int, field: FiniteField, seed: int,
                                cfg: Config = DEFAULT) -> ConstructionReport:
    """Experimental search for an i-pencil secant configuration.

    For i <= 6 this is build_genus8_secant.  For i = 7 or 8 no
    configuration is known to exist: i random dual points essentially
    never fit inside a P^5, so every attempt fails the span check and
    the search is expected to end in RetryExhausted.  The entry point
    exists to make that search honest and repeatable rather than to
    certify anything.
    """
    if not 1 <= int(i) <= 8:
        raise HypothesisViolated("the search supports 1 <= i <= 8")
    if int(i) <= 6:
        return build_genus8_secant(int(i), field, seed, cfg)
    if field.q < 11:
        raise HypothesisViolated("need q >= 11")
    rng = Rng(seed)
    last = None
    for _ in range(cfg.retry_bound):
        try:
            return _attempt_secant(int(i), field, seed, rng, cfg)
        except _RETRYABLE as exc:
            last = exc
    raise RetryExhausted(
        f"no {i}-pencil configuration found in {cfg.retry_bound} seeded "
        f"attempts: {last}")


def _attempt_secant(i: int, field: FiniteField, seed: int, rng: Rng,
                    cfg: Config) -> ConstructionReport:
    builder = ReportBuilder(f"genus8-secant-{i}", 8, field, seed)
    sys6 = plucker_system(6)

    bases, seeds = [], []
    for _ in range(i):
        pair, pt = dual_seed_embed(sys6, field, rng)
        bases.append(pair)
        seeds.append(pt)
    extras = []
    for _ in range(6 - i):
        for _ in range(100):
            v = rng.nonzero_vector(field, 15)
            if not on_grassmannian(sys6, field, v):
                extras.append(v)
                break
        else:
            raise SpanDegenerate("could not draw a point off the dual locus")
    rows = np.array(seeds + extras, dtype=np.int64)
    span = LinearSubspace.from_points(field, 15, rows)
    if span.points.shape[0] != 6:
        raise SpanDegenerate("the six dual points do not span a P^5")

    p8 = LinearSubspace.from_forms(field, 15, rows)
    surface = linear_section_ideal(sys6, p8)
    builder.ideals["surface"] = surface.to_json()
    hf_expected(builder, "surface-hilbert-function", surface, _K3_HF,
                SingularSurface("unexpected Hilbert function"))

    sampled = _pencil_members(builder, field, sys6, surface, p8,
                              list(zip(bases, seeds)), cfg)
    builder.require("smoothness-sampled", True, len(sampled) > 0,
                    SingularSurface("no smooth sample points found"))
    builder.note("smoothness", f"sampled({len(sampled)} points)")

    _census_checks(builder, field, sys6, rows, set(seeds), i, cfg)
    _cross_checks(builder, field, surface, builder.pencils)

    pl = builtin(f"N{i}")
    builder.check("lattice-pencil-census-degree5", i,
                  pencil_census(pl, 5).count)
    builder.check("lattice-moduli-dimensions", [19 - i, 27 - i],
                  list(moduli_dimensions(pl.lattice, 8)))
    return builder.build()


def _is_pencil_base_point(field: FiniteField, ambient_pt, alpha,
                          beta) -> bool:
    """True when the 2-space of ambient_pt kills both pencil vectors.

    Such a point lies on every member of the pencil: it is the pencil's
    base point on the degree-14 model, cut out inside the P^8 by the
    census point's own pairing form going identically to zero on the
    wedge square of its kernel.
    """
    phi, psi = dual_point_basis(field, 6, ambient_pt)
    for form in (phi, psi):
        for vec in (alpha, beta):
            acc = 0
            for a, b in zip(form, vec):
                acc = field.add(acc, field.mul(int(a), int(b)))
            if acc != 0:
                return False
    return True


def _pencil_members(builder: ReportBuilder, field: FiniteField, sys6,
                    surface: GradedIdeal, p8: LinearSubspace, duals,
                    cfg: Config, base_points: bool = False) -> list:
    """One member per pencil: Hilbert check plus smooth rational samples.

    The member for the form alpha is the locus of 2-spaces inside
    ker(alpha): its wedge forms restrict to a P^4 inside the P^8, and
    the member is an elliptic normal quintic there.  The member's own
    rational points (about q per member) feed the smoothness sample.

    With base_points=True a singular sample is tolerated when it is the
    pencil's structural base point (the residual-span construction
    forces one per pencil); its Jacobian rank is recorded instead.  Any
    other singular sample still aborts the attempt.
    """
    sampled = []
    for idx, ((alpha, beta), pt) in enumerate(duals):
        wedge = wedge_with_basis(field, sys6, alpha)
        rows = [restrict_form(field, p8, w) for w in wedge]
        sub = LinearSubspace.from_forms(field, p8.points.shape[0], rows)
        if sub.projective_dim != 4:
            raise SingularSurface(
                f"member span has dimension {sub.projective_dim}, expected 4")
        member = restrict_ideal(surface, sub)
        hf = [hilbert_function(member, d) for d in range(1, 5)]
        builder.require(f"pencil-{idx}-member-hilbert-function",
                        _MEMBER_HF, hf,
                        SingularSurface("member is not a quintic curve"))
        count = 0
        base_ranks = []
        for mp in rational_points(member, cfg):
            lifted = lift_point(field, sub, mp)
            rank = jacobian_rank_at(surface, lifted)
            if rank != 6:
                ambient = lift_point(field, p8, lifted)
                if base_points and _is_pencil_base_point(field, ambient,
                                                         alpha, beta):
                    base_ranks.append(int(rank))
                    continue
                raise SingularSurface(
                    f"Jacobian rank {rank} != 6 at {lifted}")
            sampled.append(lifted)
            count += 1
        if base_points and count == 0:
            raise SingularSurface("member has no smooth rational points")
        member_forms = [[int(x) for x in row] for row in sub.forms]
        member_sample = {"span_forms": member_forms, "hf": hf,
                         "rational_points": count}
        if base_points:
            member_sample["base_points"] = {
                "count": len(base_ranks), "jacobian_ranks": base_ranks}
        builder.pencil(dual_point=list(pt), member_sample=member_sample,
                       degree=5)
    return sampled


def _census_checks(builder: ReportBuilder, field: FiniteField, sys6,
                   rows: np.ndarray, expected_set, expected_count: int,
                   cfg: Config):
    """The dual P^5 meets the dual Grassmannian in exactly the seeds.

    Two layers: an exhaustive rational scan of the dual P^5, and the
    Hilbert function of the intersection scheme, which counts points
    with multiplicity over the algebraic closure and therefore also
    rules out extra points over every extension field.
    """
    census_sub = LinearSubspace.from_points(field, 15, rows)
    census_ideal = linear_section_ideal(sys6, census_sub)
    found = set()
    for pt in rational_points(census_ideal, cfg):
        found.add(normalize_point(field, lift_point(field, census_sub, pt)))
    if found != expected_set:
        raise ExtraDualPoints(
            f"rational dual census has {len(found)} points, expected "
            f"{expected_count}")
    builder.check("dual-census-rational", expected_count, len(found))
    length = stabilized_hf(census_ideal, start=2, cap=8)
    builder.require("dual-census-length-over-closure", expected_count,
                    length, ExtraDualPoints("dual census gains points over "
                                            "an extension field"))
    builder.note("dual-census-method",
                 "rational scan of the dual P^5 plus Hilbert-function "
                 "stabilization (covers all extension fields)")


def _cross_checks(builder: ReportBuilder, field: FiniteField,
                  surface: GradedIdeal, pencils):
    """Members of distinct pencils meet in a length-2 scheme."""
    for i in range(len(pencils)):
        for j in range(i + 1, len(pencils)):
            cross = GradedIdeal.from_generators(
                list(surface.generators)
                + linear_forms_to_polys(
                    field, pencils[i]["member_sample"]["span_forms"])
                + linear_forms_to_polys(
                    field, pencils[j]["member_sample"]["span_forms"]))
            got = stabilized_hf(cross, start=2, cap=8)
            builder.require(f"cross-degree-{i}-{j}", 2, got,
                            SingularSurface("cross-pencil degree mismatch"))


def build_genus8_nine(field: FiniteField, seed: int,
                      cfg: Config = DEFAULT) -> ConstructionReport:
    """K3 with nine degree-5 pencils, grown from a curve section.

    Four seeded points on the sub-Grassmannian G(2,V5) span a P^3,
    which meets G(2,V5) in a length-5 scheme; the fifth point is the
    residual degree-1 point, hence rational.  Those five points form a
    degree-5 pencil divisor D on the genus-8 curve C cut by a P^7
    through them (a P^4 span would be fatal: it would drag a whole
    quintic elliptic curve of G(2,V5) into C).  A hyperplane of the
    P^7 through span(D) cuts C in D plus a residual degree-9 divisor
    whose span is a 9-secant P^5 of the Grassmannian; the K3 through
    its annihilator P^8 carries nine pencils, certified by
    Hilbert-function stabilization of the secant intersection.

    Unlike the secant pipeline, the residual-span P^8 gives a model
    that is singular at one base point per pencil (see the
    pencil-base-points note in the report); smoothness is sampled away
    from those, and any other singular sample aborts the attempt.
    """
    if field.q < 11:
        raise HypothesisViolated("need q >= 11")
    rng = Rng(seed)
    last = None
    for _ in range(cfg.retry_bound):
        try:
            return _attempt_nine(field, seed, rng, cfg)
        except _RETRYABLE as exc:
            last = exc
    raise RetryExhausted(
        f"genus-8 nine-pencil pipeline failed {cfg.retry_bound} "
        f"attempts: {last}")


def _attempt_nine(field: FiniteField, seed: int, rng: Rng,
                  cfg: Config) -> ConstructionReport:
    builder = ReportBuilder("genus8-nine", 8, field, seed)
    sys6 = plucker_system(6)

    # Four rational seeds on G(2, V5), V5 = <e0..e4>.  Their P^3 meets
    # the sub-Grassmannian in a length-5 scheme whose last point is a
    # residual degree-1 point, so it is rational and free.
    seeds = []
    for _ in range(4):
        u5, v5 = rng.independent_pair(field, 5)
        pt = plucker_embed(sys6, field, list(u5) + [0], list(v5) + [0])
        seeds.append(normalize_point(field, pt))
    p3 = LinearSubspace.from_points(field, 15,
                                    np.array(seeds, dtype=np.int64))
    if p3.projective_dim != 3:
        raise SpanDegenerate("the four sub-Grassmannian seeds do not "
                             "span a P^3")
    secant_scheme = linear_section_ideal(sys6, p3)
    builder.require("divisor-scheme-length", 5,
                    stabilized_hf(secant_scheme, start=2, cap=6),
                    ExtraDualPoints("the seeded P^3 is not exactly "
                                    "5-secant"))
    rational = [normalize_point(field, lift_point(field, p3, pt))
                for pt in rational_points(secant_scheme, cfg)]
    if len(rational) != 5:
        raise ExtraDualPoints(
            f"5-secant scheme has {len(rational)} rational points; "
            "a tangency or collision spoiled the residual point")
    fifth = [pt for pt in rational if pt not in set(seeds)]
    if len(fifth) != 1:
        raise SpanDegenerate("seed points collide on the secant scheme")
    builder.note("residual-divisor-point", "rational, found by census")
    divisor_pts = seeds + fifth

    extras = [rng.nonzero_vector(field, 15) for _ in range(4)]
    p7 = LinearSubspace.from_points(field, 15,
                                    np.array(seeds + extras, dtype=np.int64))
    if p7.points.shape[0] != 8:
        raise SpanDegenerate("seeds plus extras do not span a P^7")

    curve = linear_section_ideal(sys6, p7)
    builder.ideals["curve"] = curve.to_json()
    hf_expected(builder, "curve-hilbert-function", curve, _CURVE_HF,
                SingularSurface("curve section has wrong Hilbert function"))

    d_internal = [subspace_coordinates(p7, pt) for pt in divisor_pts]
    on_curve = all(g.evaluate(tuple(z)) == 0
                   for g in curve.generators for z in d_internal)
    builder.check("curve-contains-seed-divisor", True, on_curve)
    for z in d_internal:
        if jacobian_rank_at(curve, z) != 6:
            raise SingularSurface("curve is singular at a divisor point")

    span_d = LinearSubspace.from_points(
        field, 8, np.array(d_internal, dtype=np.int64))
    builder.require("divisor-span-dimension", 3, span_d.projective_dim,
                    SpanDegenerate("pencil divisor spans the wrong "
                                   "dimension"))
    combo = rng.coefficients(field, span_d.forms.shape[0])
    hyper_form = [0] * 8
    for c, row in zip(combo, span_d.forms):
        cc = int(c) % field.q
        if cc:
            for jj, r in enumerate(row):
                if r:
                    hyper_form[jj] = field.add(hyper_form[jj],
                                               field.mul(cc, int(r)))
    p6 = LinearSubspace.from_forms(field, 8, [hyper_form])
    if p6.projective_dim != 6:
        raise SpanDegenerate("hyperplane through the divisor is degenerate")

    z_ideal = restrict_ideal(curve, p6)
    builder.require("hyperplane-section-length", 14,
                    stabilized_hf(z_ideal, start=2, cap=8),
                    SingularSurface("hyperplane section of the curve does "
                                    "not have length 14"))
    d_in_p6 = [subspace_coordinates(p6, z) for z in d_internal]
    divisor_ideal = GradedIdeal.from_points(field, 7, d_in_p6)

    # Colon degree ladder: low degrees almost always stabilize, and the
    # cost of a degree-7 piece of I_Z is prohibitive, so climb lazily.
    residual = None
    for dmax in (3, 4, 5, 6):
        try:
            residual = colon_linear_span(z_ideal, divisor_ideal, dmax)
            break
        except NotStabilized:
            continue
    if residual is None:
        raise NotStabilized("colon span still moving at degree 6")
    builder.note("residual-colon-dmax", dmax)
    builder.require("residual-span-dimension", 5, residual.projective_dim,
                    ResidualSpanWrongDim(
                        f"residual span has dimension "
                        f"{residual.projective_dim}, expected 5"))

    dual_rows = field_matmul(
        field, field_matmul(field, residual.points, p6.points), p7.points)
    p8 = LinearSubspace.from_forms(field, 15, dual_rows)
    if p8.projective_dim != 8:
        raise SpanDegenerate("annihilator of the residual span is not a P^8")
    surface = linear_section_ideal(sys6, p8)
    builder.ideals["surface"] = surface.to_json()
    hf_expected(builder, "surface-hilbert-function", surface, _K3_HF,
                SingularSurface("unexpected Hilbert function"))

    census_sub = LinearSubspace.from_points(field, 15, dual_rows)
    census_ideal = linear_section_ideal(sys6, census_sub)
    length = stabilized_hf(census_ideal, start=2, cap=8)
    builder.require("dual-census-length-over-closure", 9, length,
                    ExtraDualPoints(
                        f"dual census has length {length}, expected 9"))

    rational_duals = [normalize_point(field,
                                      lift_point(field, census_sub, pt))
                      for pt in rational_points(census_ideal, cfg)]
    builder.note("rational-dual-points", f"{len(rational_duals)} of 9")
    if len(rational_duals) < 2:
        raise ExtraDualPoints(
            "fewer than 2 rational dual points; cannot exercise the "
            "member and cross-pencil checks at this seed")
    duals = []
    for pt in rational_duals:
        alpha, beta = dual_point_basis(field, 6, pt)
        duals.append(((alpha, beta), pt))
    sampled = _pencil_members(builder, field, sys6, surface, p8, duals, cfg,
                              base_points=True)
    builder.require("smoothness-sampled", True, len(sampled) > 0,
                    SingularSurface("no smooth sample points found"))
    base_total = sum(p["member_sample"]["base_points"]["count"]
                     for p in builder.pencils)
    builder.note("smoothness",
                 f"sampled({len(sampled)} points away from the "
                 f"{base_total} pencil base points)")
    builder.note("pencil-base-points",
                 "on this degree-14 model every pencil acquires a base "
                 "point where the surface is singular: the census point's "
                 "pairing form vanishes identically on the wedge square "
                 "of its kernel, so the P^8 always meets that P^5, and "
                 "for a residual-span P^8 the meeting point lands on the "
                 "Grassmannian; members are smooth elsewhere")
    _cross_checks(builder, field, surface, builder.pencils)

    builder.check("lattice-maximal-configuration-size", 10,
                  max_admissible_size(8, 5, 2))
    n9 = pencil_census(builtin("N9"), 5)
    builder.note("lattice-raw-degree5-classes", n9.details["raw_isotropic"])
    builder.note("lattice-nef-certified-classes", n9.count)
    builder.note("lattice-comment",
                 "the rank-10 pairing model of nine mutual-degree-2 "
                 "pencils admits no nef certificate; the geometric "
                 "census above is the set-theoretic count")
    return builder.build()

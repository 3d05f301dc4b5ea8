"""Genus-4 pipeline: a sextic K3 with two pencils of plane cubics.

The surface is the complete intersection of a quadric cone and a cubic
in P^4.  The cone is built over a ruled quadric surface in P^3, so both
rulings are rational by construction; each ruling plane meets the
surface in a plane cubic, and the two resulting pencils intersect each
other with total degree 3.
"""

from __future__ import annotations

import numpy as np

from ..config import Config, DEFAULT
from ..errors import (HypothesisViolated, NonSplitQuadric, RetryExhausted,
                      SingularSurface, VertexOnSurface)
from ..exactlin import FiniteField
from ..grassmann import (GradedIdeal, LinearSubspace, Poly, hilbert_function,
                         jacobian_rank_at, rational_points, restrict_ideal)
from ..k3lattice import builtin, moduli_dimensions, pencil_census
from .common import (hf_expected, invert_matrix, lift_point,
                     linear_forms_to_polys, pad_poly, random_homogeneous_poly,
                     span_rank, stabilized_hf)
from .report import ConstructionReport, ReportBuilder
from .rng import Rng

_RETRYABLE = (SingularSurface, VertexOnSurface)


def _linear_poly(field: FiniteField, row, nvars: int) -> Poly:
    return linear_forms_to_polys(field, [list(row) + [0] * (nvars - len(row))])[0]


def _combine(field: FiniteField, c0, row0, c1, row1):
    """c0 * row0 + c1 * row1 over the field."""
    return [field.add(field.mul(c0, int(a)), field.mul(c1, int(b)))
            for a, b in zip(row0, row1)]


def ruling_plane(field: FiniteField, forms, ruling: int, t) -> list:
    """Forms of the ruling plane at pencil parameter t = (t0 : t1).

    `forms` are the four forms l0..l3 with the cone equation
    l0*l3 - l1*l2; ruling 0 fixes (u:v), ruling 1 fixes (s:t) of the
    Segre parametrization (y0,y1,y2,y3) = (us, ut, vs, vt).
    """
    t0, t1 = int(t[0]) % field.q, int(t[1]) % field.q
    neg = field.neg
    if ruling == 0:
        return [_combine(field, t1, forms[0], neg(t0), forms[2]),
                _combine(field, t1, forms[1], neg(t0), forms[3])]
    return [_combine(field, t1, forms[0], neg(t0), forms[1]),
            _combine(field, t1, forms[2], neg(t0), forms[3])]


def genus4_surface_ideal(field: FiniteField, quadric: Poly,
                         cubic: Poly) -> GradedIdeal:
    """Ideal of the (2,3) intersection in P^4, guarding the cone vertex.

    `quadric` must not involve the last variable (it is the cone over a
    quadric surface, with vertex at the last coordinate point); the
    cubic must avoid that vertex, otherwise the intersection is forced
    to be singular there and VertexOnSurface is raised.
    """
    nv = quadric.nvars
    vertex = tuple(0 if i < nv - 1 else 1 for i in range(nv))
    if quadric.evaluate(vertex) != 0 or any(e[nv - 1] for e in quadric.terms):
        raise HypothesisViolated("quadric must be a cone over P^3")
    if cubic.evaluate(vertex) == 0:
        raise VertexOnSurface("the cubic passes through the cone vertex")
    return GradedIdeal.from_generators([quadric, cubic])


def _surface_checks(builder: ReportBuilder, surface: GradedIdeal,
                    cfg: Config) -> list:
    """Hilbert table and full-enumeration smoothness for the sextic K3."""
    hf_expected(builder, "surface-hilbert-function", surface,
                [(d, 3 * d * d + 2) for d in range(1, 5)],
                SingularSurface("unexpected Hilbert function"))
    pts = rational_points(surface, cfg)
    ranks_ok = all(jacobian_rank_at(surface, pt) == 2 for pt in pts)
    builder.require("smoothness-enumerated-points", True, ranks_ok,
                    SingularSurface("a rational point is singular"))
    builder.note("smoothness", f"enumerated({len(pts)} points)")
    return pts


def _pencil_checks(builder: ReportBuilder, field: FiniteField,
                   surface: GradedIdeal, forms) -> list:
    """Member Hilbert functions plus the cross-ruling line section."""
    planes = []
    for ruling in range(2):
        rows = ruling_plane(field, forms, ruling, (1, 0))
        rows5 = [list(r) + [0] for r in rows]
        plane = LinearSubspace.from_forms(field, 5, rows5)
        member = restrict_ideal(surface, plane)
        hf = [hilbert_function(member, d) for d in range(1, 5)]
        builder.require(f"pencil-{ruling}-member-hilbert-function",
                        [3, 6, 9, 12], hf,
                        SingularSurface("member is not a plane cubic"))
        builder.pencil(dual_point=None,
                       member_sample={"plane_forms": rows5, "hf": hf},
                       degree=3)
        planes.append(rows5)
    cross = GradedIdeal.from_generators(
        list(surface.generators)
        + linear_forms_to_polys(field, planes[0] + planes[1]))
    got = stabilized_hf(cross, start=2, cap=6)
    builder.require("cross-ruling-line-section-degree", 3, got,
                    SingularSurface("line section has wrong degree"))
    return planes


def _lattice_crosschecks(builder: ReportBuilder):
    pl = builtin("U3")
    builder.check("lattice-pencil-census-degree3", 2,
                  pencil_census(pl, 3).count)
    e1, e2 = (0, 1), (1, -1)
    builder.check("lattice-pairing-between-pencils", 3, pl.pairing(e1, e2))
    builder.check("lattice-moduli-dimension", 18,
                  moduli_dimensions(pl.lattice, 4)[0])


def build_genus4(field: FiniteField, seed: int,
                 cfg: Config = DEFAULT) -> ConstructionReport:
    """Construct and verify the two-pencil sextic K3 over F_q, q >= 5."""
    if field.q < 5:
        raise HypothesisViolated("need q >= 5")
    rng = Rng(seed)
    last = None
    for _ in range(cfg.retry_bound):
        try:
            return _attempt_genus4(field, seed, rng, cfg)
        except _RETRYABLE as exc:
            last = exc
    raise RetryExhausted(
        f"genus-4 pipeline failed {cfg.retry_bound} attempts: {last}")


def _attempt_genus4(field: FiniteField, seed: int, rng: Rng,
                    cfg: Config) -> ConstructionReport:
    builder = ReportBuilder("genus4", 4, field, seed)
    while True:
        forms = [rng.vector(field, 4) for _ in range(4)]
        if span_rank(field, 4, forms) == 4:
            break
    l0, l1, l2, l3 = (_linear_poly(field, row, 5) for row in forms)
    quadric = l0.mul(l3).add(l1.mul(l2).scale(field.neg(1)))
    cubic = random_homogeneous_poly(field, 5, 3, rng)
    surface = genus4_surface_ideal(field, quadric, cubic)
    builder.ideals["surface"] = surface.to_json()
    _surface_checks(builder, surface, cfg)
    _pencil_checks(builder, field, surface, forms)
    _lattice_crosschecks(builder)
    return builder.build()


def split_quadric_basis(field: FiniteField, quadric: Poly) -> np.ndarray:
    """Rows b0..b3 with quadric(y @ basis) = y0*y3 - y1*y2 exactly.

    Works in every characteristic via the polar form
    B(u, v) = Q(u+v) - Q(u) - Q(v).  Raises NonSplitQuadric when the
    quadric is degenerate (rank < 4) or has no second hyperbolic plane
    over F_q (non-split smooth type).
    """
    if quadric.nvars != 4 or quadric.degree != 2:
        raise HypothesisViolated("need a quadric in exactly 4 variables")
    q = field.q

    def qval(v):
        return quadric.evaluate(tuple(int(x) % q for x in v))

    def polar(u, v):
        s = tuple(field.add(int(a) % q, int(b) % q) for a, b in zip(u, v))
        return field.sub(field.sub(qval(s), qval(u)), qval(v))

    bmat = [[polar(_unit(i), _unit(j)) if i != j else
             field.add(qval(_unit(i)), qval(_unit(i)))
             for j in range(4)] for i in range(4)]
    if span_rank(field, 4, bmat) != 4:
        raise NonSplitQuadric("polar form is degenerate (rank < 4)")

    w1 = _first_isotropic(field, qval)
    w2 = _polar_partner(field, qval, polar, w1)
    comp = LinearSubspace.from_forms(
        field, 4, [[polar(w1, _unit(j)) for j in range(4)],
                   [polar(w2, _unit(j)) for j in range(4)]]).points
    c1, c2 = [tuple(int(x) for x in row) for row in comp]
    w3 = _isotropic_in_plane(field, qval, c1, c2)
    base = c1 if polar(w3, c1) != 0 else c2
    if polar(w3, base) == 0:
        raise NonSplitQuadric("restricted plane is degenerate")
    w4 = _make_isotropic(field, qval, polar, w3, base)
    # scale so that polar(w3, w4) = -1, giving the minus sign of y1*y2
    s = field.neg(field.inv(polar(w3, w4)))
    w4 = tuple(field.mul(s, x) for x in w4)
    basis = np.array([w1, w3, w4, w2], dtype=np.int64)
    target = {(1, 0, 0, 1): 1, (0, 1, 1, 0): field.neg(1)}
    if quadric.substitute_linear(basis).terms != target:
        raise NonSplitQuadric("hyperbolic reduction failed to normalize")
    return basis


def _unit(i: int):
    return tuple(1 if j == i else 0 for j in range(4))


def _first_isotropic(field: FiniteField, qval):
    """First nonzero isotropic vector in a fixed deterministic scan."""
    q = field.q
    for counter in range(q ** 4):
        v = ((counter // q ** 3) % q, (counter // q ** 2) % q,
             (counter // q) % q, counter % q)
        if any(v) and qval(v) == 0:
            return v
    raise NonSplitQuadric("no isotropic vector found")


def _polar_partner(field: FiniteField, qval, polar, w1):
    """Isotropic w2 with polar(w1, w2) = 1."""
    for j in range(4):
        if polar(w1, _unit(j)) != 0:
            w2 = _unit(j)
            break
    else:
        raise NonSplitQuadric("polar form is degenerate at the first vector")
    lam = field.neg(field.mul(qval(w2), field.inv(polar(w1, w2))))
    w2 = tuple(field.add(int(a), field.mul(lam, int(b)))
               for a, b in zip(w2, w1))
    s = field.inv(polar(w1, w2))
    return tuple(field.mul(s, x) for x in w2)


def _isotropic_in_plane(field: FiniteField, qval, c1, c2):
    """Nonzero isotropic vector in span(c1, c2), else NonSplitQuadric."""
    if qval(c1) == 0:
        return c1
    for a in range(field.q):
        v = tuple(field.add(field.mul(a, x), int(y)) for x, y in zip(c1, c2))
        if qval(v) == 0:
            return v
    raise NonSplitQuadric("no isotropic vector in the complement plane")


def _make_isotropic(field: FiniteField, qval, polar, w, v):
    """v + mu*w made isotropic, assuming polar(w, v) != 0 and qval(w)=0."""
    mu = field.neg(field.mul(qval(v), field.inv(polar(w, v))))
    return tuple(field.add(int(a), field.mul(mu, int(b)))
                 for a, b in zip(v, w))


def extend_genus4_curve(field: FiniteField, quadric: Poly, cubic: Poly,
                        seed: int, cfg: Config = DEFAULT) -> ConstructionReport:
    """Extend a canonical genus-4 curve in P^3 to a K3 in P^4.

    `quadric` and `cubic` are the curve's defining forms in 4 variables;
    the quadric must be smooth of split type (its two rulings carry the
    curve's two degree-3 pencils).  The K3 is cut by the cone over the
    quadric and a random cubic restricting to the given one.
    """
    basis = split_quadric_basis(field, quadric)
    forms = [list(r) for r in np.transpose(invert_matrix(field, basis))]
    rng = Rng(seed)
    last = None
    for _ in range(cfg.retry_bound):
        try:
            return _attempt_extend(field, quadric, cubic, forms, seed, rng,
                                   cfg)
        except _RETRYABLE as exc:
            last = exc
    raise RetryExhausted(
        f"genus-4 extension failed {cfg.retry_bound} attempts: {last}")


def _attempt_extend(field: FiniteField, quadric: Poly, cubic: Poly,
                    forms, seed: int, rng: Rng,
                    cfg: Config) -> ConstructionReport:
    builder = ReportBuilder("genus4-extend", 4, field, seed)
    builder.ideals["input_curve"] = {
        "quadric": [int(c) for c in quadric.coeff_vector()],
        "cubic": [int(c) for c in cubic.coeff_vector()],
    }
    curve = GradedIdeal.from_generators([quadric, cubic])

    cone = pad_poly(quadric, 5)
    vertex_part = random_homogeneous_poly(field, 5, 2, rng)
    x4 = Poly(field, 5, {(0, 0, 0, 0, 1): 1})
    big_cubic = pad_poly(cubic, 5).add(x4.mul(vertex_part))
    surface = genus4_surface_ideal(field, cone, big_cubic)
    builder.ideals["surface"] = surface.to_json()

    hyper = LinearSubspace.from_forms(field, 5, [[0, 0, 0, 0, 1]])
    restricted = restrict_ideal(surface, hyper)
    rest_coeffs = sorted(tuple(int(c) for c in g.coeff_vector())
                         for g in restricted.generators)
    input_coeffs = sorted(tuple(int(c) for c in g.coeff_vector())
                          for g in (quadric, cubic))
    builder.check("restriction-reproduces-curve", input_coeffs, rest_coeffs)
    contained = all(_in_degree_piece(curve, g) for g in restricted.generators)
    builder.check("surface-restricts-into-curve-ideal", True, contained)

    _surface_checks(builder, surface, cfg)
    planes = _pencil_checks(builder, field, surface, forms)

    # the pencils restrict to the curve's two degree-3 pencils: compare
    # the rational points of (member on S) cap P^3 with the rational
    # points of the same ruling line on the curve itself
    for ruling, rows5 in enumerate(planes):
        line4 = LinearSubspace.from_forms(field, 4,
                                          [r[:4] for r in rows5])
        on_curve = _lifted_points(field, restrict_ideal(curve, line4), line4)
        line5 = LinearSubspace.from_forms(field, 5,
                                          rows5 + [[0, 0, 0, 0, 1]])
        on_surface = _lifted_points(field, restrict_ideal(surface, line5),
                                    line5)
        on_curve5 = sorted(pt + (0,) for pt in on_curve)
        builder.check(f"pencil-{ruling}-restricts-to-curve-pencil",
                      on_curve5, sorted(on_surface))
    _lattice_crosschecks(builder)
    return builder.build()


def _in_degree_piece(ideal: GradedIdeal, gen: Poly) -> bool:
    """Whether a homogeneous polynomial lies in the ideal's degree piece."""
    rows, pivots = ideal.degree_piece(gen.degree)
    vec = np.asarray(gen.coeff_vector(), dtype=np.int64)
    f = ideal.field
    if rows.shape[0] == 0:
        return not vec.any()
    for row, piv in zip(rows, pivots):
        c = int(vec[piv])
        if c:
            lead = f.inv(int(row[piv]))
            scale = f.mul(c, lead)
            vec = np.array([f.sub(int(a), f.mul(scale, int(b)))
                            for a, b in zip(vec, row)], dtype=np.int64)
    return not vec.any()


def _lifted_points(field: FiniteField, ideal: GradedIdeal,
                   sub: LinearSubspace) -> list:
    return [lift_point(field, sub, pt) for pt in rational_points(ideal)]

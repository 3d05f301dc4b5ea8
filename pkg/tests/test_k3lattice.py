"""Lattice layer: builtin catalog, divisor arithmetic, slice enumeration,
certificates, censuses, fiber chains, rank bounds and numerology.

The builtin Gram matrices are pinned by checksum so an accidental edit of
the catalog cannot slip through.  Certificate outcomes are checked both
ways: the passing lattices pass, and the designed failing fixtures fail
with the documented witnesses.
"""

import hashlib
import itertools

import pytest

from k3lab.constructions import canonical_json
from k3lab.constructions.rng import Rng
from k3lab.errors import (DimensionMismatch, NotHyperbolic, NotPositive,
                          NotSymmetric, NotUnimodular, OddSquare, ZeroDegree)
from k3lab.exactlin import det_int, signature
from k3lab.k3lattice import (BUILTIN_NAMES, CensusResult, DivisorClass,
                             GramLattice, PolarizedLattice,
                             basis_change_check, bordered_gram, builtin,
                             certify_ample, certify_bn_general, certify_nef,
                             dump_gram, enumerate_slice, genus4_global_count,
                             h0_lower_bound, hodge_index_check, lm_invariants,
                             load_gram, max_admissible_size, m6,
                             moduli_dimensions, n_pencils, pencil_census,
                             rr_chi, u3, verify_fiber_chain_genus8)

ALL_BUILTINS = ["U3", "M6"] + [f"N{i}" for i in range(1, 10)]

# sha256 of the canonical JSON dump of each builtin Gram lattice
CATALOG_CHECKSUMS = {
    "U3": "5c119471f973b3a4bb593456ec9e9215404de8ff7525dfb16aacc92e4b5a68fd",
    "M6": "7fc092677caed714524fcfe8238040a6354b080e4141c2029672545ffa9db16f",
    "N1": "386b0170095c306f56771603061f96327dcbebcfd55faaf346a57159a7bdd3ea",
    "N2": "d88ea887c09e7ccfc6313f611a2a743106820e64565a7bc09c6d83ba5c14dd13",
    "N3": "18df1c6ca853d82f2c51e6148ba1140e6ece4344c88d33306240ba378ea7388d",
    "N4": "2f754c5030865f8bfef34553e1f70eaadb2cf43ae4a17d61400ca98ac839a73a",
    "N5": "2f92bcb520e51e0a4f1b2e1f60b1cc750f51612b55be279aa02fee7ea0e36aec",
    "N6": "b33acf3fa3aa7f41348ef33fcd5aeddf560dee98e9c306e22526496643087ec1",
    "N7": "8b240d24d77cdf69d041b22d4aca90ab0e76a7f81bee7b800f4c6f1c112b1d34",
    "N8": "142aad761b79ecff08c76e68d94639eef56160bfd8808291116a889928f8b2cf",
    "N9": "23d274906fd413f2c445bd36c16ba2f97a0e2791c6c9dd399348cfdafba73a5b",
}


# ---------------------------------------------------------------------------
# catalog


def test_builtin_names_catalog():
    assert set(BUILTIN_NAMES) == set(ALL_BUILTINS)
    with pytest.raises(KeyError):
        builtin("X1")


def test_catalog_checksums_pin_the_gram_matrices():
    for name in ALL_BUILTINS:
        digest = hashlib.sha256(
            canonical_json(dump_gram(builtin(name))).encode()).hexdigest()
        assert digest == CATALOG_CHECKSUMS[name], name


def test_builtin_grams_are_even_hyperbolic():
    for name in ALL_BUILTINS:
        pl = builtin(name)
        lat = pl.lattice
        assert lat.is_even(), name
        assert lat.is_hyperbolic(), name
        assert lat.signature() == (1, lat.rank - 1, 0), name


def test_u3_gram_values():
    pl = u3()
    lat = pl.lattice
    assert lat.rank == 2
    assert pl.square(pl.polarization) == 6
    assert pl.genus() == 4
    assert lat.pairing([1, 0], [0, 1]) == 3
    assert lat.square([0, 1]) == 0


def test_m6_gram_values():
    pl = m6()
    lat = pl.lattice
    assert lat.rank == 5
    assert pl.square(pl.polarization) == 10
    assert pl.genus() == 6
    # four degree-4 pencil classes with mutual product 2
    for j in range(1, 5):
        e = [0] * 5
        e[j] = 1
        assert lat.square(e) == 0
        assert pl.degree(e) == 4
        for k in range(j + 1, 5):
            f = [0] * 5
            f[k] = 1
            assert lat.pairing(e, f) == 2


def test_n_pencils_gram_values():
    for i in range(1, 10):
        pl = n_pencils(i)
        lat = pl.lattice
        assert lat.rank == i + 1
        assert pl.square(pl.polarization) == 14
        assert pl.genus() == 8
        for j in range(1, i + 1):
            e = [0] * (i + 1)
            e[j] = 1
            assert lat.square(e) == 0
            assert pl.degree(e) == 5
            for k in range(j + 1, i + 1):
                f = [0] * (i + 1)
                f[k] = 1
                assert lat.pairing(e, f) == 2
    with pytest.raises(Exception):
        n_pencils(0)


def test_dump_load_gram_roundtrip():
    for name in ("U3", "M6", "N3"):
        pl = builtin(name)
        data = dump_gram(pl)
        back = load_gram(data)
        assert back.lattice == pl.lattice
        assert tuple(back.polarization) == tuple(pl.polarization)


def test_load_gram_from_path(tmp_path):
    import json
    f = tmp_path / "lat.json"
    f.write_text(json.dumps({"gram": [[6, 3], [3, 0]],
                             "polarization": [1, 0]}))
    pl = load_gram(str(f))
    assert pl.square(pl.polarization) == 6
    assert pl.lattice.rank == 2


# ---------------------------------------------------------------------------
# divisor classes and lattice basics


def test_divisor_class_arithmetic():
    a = DivisorClass([1, 2])
    b = DivisorClass([0, -1])
    assert tuple(a + b) == (1, 1)
    assert tuple(a - b) == (1, 3)
    assert tuple(-a) == (-1, -2)
    assert tuple(a * 3) == (3, 6)
    assert tuple(3 * a) == (3, 6)
    assert a == DivisorClass((1, 2))
    assert a != b
    assert len(a) == 2 and a[1] == 2
    assert hash(a) == hash(DivisorClass([1, 2]))
    assert DivisorClass([0, 0]).is_zero()
    assert not a.is_zero()
    assert DivisorClass([2, 3]).is_primitive()
    assert not DivisorClass([2, 4]).is_primitive()


def test_gram_lattice_validation():
    with pytest.raises(NotSymmetric):
        GramLattice([[0, 1], [2, 0]])
    lat = GramLattice([[2, 1], [1, 2]])  # positive definite
    assert not lat.is_hyperbolic()


def test_gram_lattice_even_flag():
    assert GramLattice([[2, 1], [1, 2]]).is_even()
    assert not GramLattice([[1, 0], [0, 2]]).is_even()


def test_polarized_lattice_validation():
    lat = GramLattice([[0, 3], [3, 0]])
    with pytest.raises(NotPositive):
        PolarizedLattice(lat, [1, 0])  # isotropic polarization
    pl = PolarizedLattice(lat, [1, 1])
    assert pl.square(pl.polarization) == 6
    with pytest.raises(NotPositive):
        PolarizedLattice(lat, [1, 1], reference_nef=[1, -1])


def test_moduli_dimensions_rejects_non_hyperbolic():
    with pytest.raises(NotHyperbolic):
        moduli_dimensions(GramLattice([[2, 0], [0, 2]]), 4)


# ---------------------------------------------------------------------------
# Riemann-Roch helpers


def test_rr_chi_values():
    assert rr_chi(u3(), [1, 0]) == 5          # L^2 = 6
    assert rr_chi(m6(), [1, 0, 0, 0, 0]) == 7  # L^2 = 10
    pl = n_pencils(1)
    assert rr_chi(pl, [1, 0]) == 9            # L^2 = 14
    assert rr_chi(pl, [0, 1]) == 2            # pencil class, E^2 = 0
    assert rr_chi(None, -4) == 0              # raw square form
    with pytest.raises(OddSquare):
        rr_chi(None, 3)


def test_h0_lower_bound():
    assert h0_lower_bound(0) == 2
    assert h0_lower_bound(-2) == 1
    assert h0_lower_bound(-6) == 1  # clamps at 1
    assert h0_lower_bound(8) == 6
    with pytest.raises(OddSquare):
        h0_lower_bound(5)


def test_hodge_index_check():
    pl = u3()
    assert hodge_index_check(pl, [1, 1], [0, 1])
    assert hodge_index_check(pl, [1, 1], [1, -1])
    with pytest.raises(NotPositive):
        hodge_index_check(pl, [0, 1], [1, 1])  # first class isotropic


# ---------------------------------------------------------------------------
# slice enumeration


def _box_slice(pl, degree, square, orient, radius):
    """Brute-force box oracle for enumerate_slice."""
    n = pl.lattice.rank
    hits = []
    for coords in itertools.product(range(-radius, radius + 1), repeat=n):
        if all(c == 0 for c in coords):
            continue
        if pl.degree(coords) != degree:
            continue
        if pl.lattice.square(coords) != square:
            continue
        hd = pl.h_degree(coords)
        if orient == "nonneg" and hd < 0:
            continue
        if orient == "positive" and hd <= 0:
            continue
        hits.append(tuple(coords))
    hits.sort()
    return hits


def test_enumerate_slice_vs_box_on_u3():
    pl = u3()
    for degree, square in [(3, 0), (6, 6), (2, -2), (5, 2), (9, 4)]:
        for orient in ("nonneg", "positive", "all"):
            res = enumerate_slice(pl, degree, square, orient=orient)
            box = _box_slice(pl, degree, square, orient, 12)
            assert list(res.classes) == box, (degree, square, orient)
            # enumerated classes sit well inside the box radius
            for cls in res.classes:
                assert max(abs(c) for c in cls) <= 6


def test_enumerate_slice_vs_box_on_m6():
    pl = m6()
    for degree, square in [(2, 0), (4, 2), (1, -2)]:
        res = enumerate_slice(pl, degree, square, orient="all")
        box = _box_slice(pl, degree, square, "all", 3)
        assert list(res.classes) == box, (degree, square)
        for cls in res.classes:
            assert max(abs(c) for c in cls) <= 2


def test_enumerate_slice_hodge_exclusion():
    res = enumerate_slice(u3(), 1, 2)
    assert res.count == 0 and res.note == "hodge-index-excluded"


def test_enumerate_slice_sorted_and_complete_flag():
    res = enumerate_slice(u3(), 6, 0, orient="all")
    assert list(res.classes) == sorted(res.classes)
    assert res.complete
    d = res.to_json()
    assert d["count"] == res.count
    assert d["query"] == {"degree": 6, "square": 0, "orient": "all"}


def test_enumerate_slice_rejects_bad_orient():
    with pytest.raises(ValueError):
        enumerate_slice(u3(), 3, 0, orient="up")


def test_enumerate_slice_on_random_rank3_lattices():
    # random unimodular conjugates of U + <-2k>: box oracle agreement
    rng = Rng(1234)
    trials = 0
    while trials < 12:
        k = 1 + rng.below(3)
        g0 = [[0, 1, 0], [1, 0, 0], [0, 0, -2 * k]]
        p = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
        for _ in range(4):
            i = rng.below(3)
            j = rng.below(3)
            if i == j:
                continue
            c = rng.below(3) - 1
            for r in range(3):
                p[r][i] += c * p[r][j]
        gram = [[sum(p[r][a] * g0[r][s] * p[s][b] for r in range(3)
                     for s in range(3)) for b in range(3)]
                for a in range(3)]
        lat = GramLattice(gram)
        pol = None
        for cand in itertools.product(range(-2, 3), repeat=3):
            if lat.square(cand) > 0:
                pol = cand
                break
        if pol is None:
            continue
        pl = PolarizedLattice(lat, pol)
        degree = 1 + rng.below(5)
        square = 2 * (rng.below(4) - 2)
        res = enumerate_slice(pl, degree, square, orient="all")
        box = _box_slice(pl, degree, square, "all", 8)
        inside = [c for c in box if max(abs(x) for x in c) <= 8]
        assert set(res.classes) >= set(inside)
        for cls in res.classes:
            assert pl.degree(cls) == degree
            assert lat.square(cls) == square
        trials += 1


# ---------------------------------------------------------------------------
# ampleness certificates


def test_certify_ample_passes_on_all_builtins():
    for name in ALL_BUILTINS:
        cert = certify_ample(builtin(name))
        assert cert.passed, name
        assert cert.status == "PASS"


def test_certify_ample_fails_with_paired_witnesses():
    pl = PolarizedLattice(GramLattice([[6, 0], [0, -2]]), DivisorClass([1, 0]))
    cert = certify_ample(pl)
    assert not cert.passed
    assert set(cert.witnesses) == {(0, -1), (0, 1)}


def test_certify_ample_fixture_file(fixtures_dir):
    pl = load_gram(str(fixtures_dir / "fail_ample.json"))
    cert = certify_ample(pl)
    assert not cert.passed
    assert set(cert.witnesses) == {(0, -1), (0, 1)}


def test_certificate_to_json_shape():
    cert = certify_ample(builtin("U3"))
    d = cert.to_json()
    assert d["status"] == "PASS"
    assert d["claim"]
    assert isinstance(d["witnesses"], list)
    canonical_json(d)  # must be serializable


# ---------------------------------------------------------------------------
# section-count certificates


def test_certify_bn_passes_through_n8():
    for name in ["U3", "M6"] + [f"N{i}" for i in range(1, 9)]:
        cert = certify_bn_general(builtin(name))
        assert cert.passed, name


def test_certify_bn_fails_on_n9_with_witness():
    cert = certify_bn_general(builtin("N9"))
    assert not cert.passed
    wit = ((-3, 1, 1, 1, 1, 1, 1, 1, 1, 1),
           (4, -1, -1, -1, -1, -1, -1, -1, -1, -1), 2, 6)
    assert wit in cert.witnesses
    # the witness really is a product decomposition that clears the bound:
    # M + N = L, h0(M) * h0(N) = 12 >= g + 1 = 9
    n9 = builtin("N9")
    m_cls = DivisorClass(wit[0])
    n_cls = DivisorClass(wit[1])
    assert tuple(m_cls + n_cls) == tuple(n9.polarization)
    assert h0_lower_bound(n9.square(m_cls)) == wit[2]
    assert h0_lower_bound(n9.square(n_cls)) == wit[3]
    assert wit[2] * wit[3] >= 9
    d = cert.to_json()
    canonical_json(d)  # mixed tuple/int witnesses must serialize


def test_certify_bn_fixture_file(fixtures_dir):
    pl = load_gram(str(fixtures_dir / "fail_bn.json"))
    cert = certify_bn_general(pl)
    assert not cert.passed
    wit = cert.witnesses[0]
    assert tuple(DivisorClass(wit[0]) + DivisorClass(wit[1])) \
        == tuple(pl.polarization)
    assert wit[2] * wit[3] >= pl.genus() + 1


# ---------------------------------------------------------------------------
# nef certificates


def test_certify_nef_on_pencil_classes():
    pl = m6()
    for j in range(1, 5):
        e = [0] * 5
        e[j] = 1
        assert certify_nef(pl, e).passed
    assert certify_nef(pl, [2, -1, -1, -1, -1]).passed
    assert certify_nef(u3(), [0, 1]).passed


def test_certify_nef_n9_obstruction():
    pl = builtin("N9")
    e1 = [0] * 10
    e1[1] = 1
    cert = certify_nef(pl, e1)
    assert not cert.passed
    assert cert.details["reason"] == "obstructing-curve"
    obst = cert.details["obstructing_class"]
    assert pl.pairing(obst, e1) < 0
    assert pl.square(obst) == -2


def test_certify_nef_input_validation():
    from k3lab.errors import NotIsotropic
    with pytest.raises(NotIsotropic):
        certify_nef(u3(), [1, 0])  # square 6, not a pencil class
    with pytest.raises(ZeroDegree):
        certify_nef(u3(), [0, -1])  # degree -3


# ---------------------------------------------------------------------------
# pencil censuses


def test_pencil_census_u3():
    cen = pencil_census(u3(), 3)
    assert set(cen.classes) == {(0, 1), (1, -1)}
    assert cen.count == 2


def test_pencil_census_m6():
    cen = pencil_census(m6(), 4)
    assert cen.count == 5
    sums = [sum(col) for col in zip(*cen.classes)]
    assert sums == [2, 0, 0, 0, 0]  # the five classes sum to 2L


def test_pencil_census_n_series():
    for i in range(1, 9):
        cen = pencil_census(builtin(f"N{i}"), 5)
        assert cen.count == i, i


def test_pencil_census_n9_raw_nine_certified_zero():
    cen = pencil_census(builtin("N9"), 5)
    assert cen.details["raw_isotropic"] == 9
    assert cen.count == 0


def test_pencil_census_to_json():
    d = pencil_census(m6(), 4).to_json()
    assert d["count"] == 5
    canonical_json(d)


# ---------------------------------------------------------------------------
# fiber chains


def test_fiber_chain_passes_on_each_n9_generator():
    pl = builtin("N9")
    for j in range(1, 10):
        e = [0] * 10
        e[j] = 1
        rep = verify_fiber_chain_genus8(pl, e)
        assert rep["status"] == "PASS", j
        assert all(s["status"] == "PASS" for s in rep["steps"])


def test_fiber_chain_passes_on_n1():
    rep = verify_fiber_chain_genus8(builtin("N1"), [0, 1])
    assert rep["status"] == "PASS"
    names = [s["name"] for s in rep["steps"]]
    assert "bound:h1-le-6" in names
    assert "gate:case-split" in names
    assert rep["scan"]["scanned"] >= 0


def test_fiber_chain_hypothesis_checks():
    from k3lab.errors import HypothesisViolated
    with pytest.raises(HypothesisViolated):
        verify_fiber_chain_genus8(builtin("N1"), [1, 0])  # L, not a pencil
    with pytest.raises(HypothesisViolated):
        verify_fiber_chain_genus8(u3(), [0, 1])  # wrong genus


# ---------------------------------------------------------------------------
# rank bounds


def test_max_admissible_size_values():
    assert max_admissible_size(8, 5, 2) == 10
    assert max_admissible_size(6, 4, 2) == 5
    assert max_admissible_size(4, 3, 3) == 2


def test_max_admissible_size_monotone_in_mutual_product():
    # a larger mutual product correlates the borders and kills
    # hyperbolicity sooner, so the bound is non-increasing in it
    values = [max_admissible_size(8, 5, m) for m in range(1, 5)]
    assert values == sorted(values, reverse=True)
    assert values[1] == 10  # the certified sharp case
    # the bound grows with the pencil degree at fixed mutual product
    assert [max_admissible_size(8, d, 2) for d in (3, 4, 5)] == [2, 3, 10]


def test_bordered_gram_signatures():
    sig = signature(bordered_gram(6, 4, 2, 6))
    assert sig[0] + sig[2] >= 2 or sig[0] >= 2
    sig = signature(bordered_gram(8, 5, 2, 11))
    assert sig[0] >= 2  # two positive directions kill hyperbolicity
    # and the certified maximum really is sharp: size 10 embeds
    sig = signature(bordered_gram(8, 5, 2, 10))
    assert sig[0] == 1


def test_bordered_gram_shape():
    g = bordered_gram(8, 5, 2, 4)  # n is the total size, corner included
    assert len(g) == 4 and all(len(r) == 4 for r in g)
    assert g[0][0] == 14  # 2*8 - 2
    assert g[0][1] == 5 and g[1][2] == 2 and g[1][1] == 0


# ---------------------------------------------------------------------------
# moduli dimensions and counts


def test_moduli_dimensions():
    assert moduli_dimensions(u3().lattice, 4) == (18, 22)
    assert moduli_dimensions(m6().lattice, 6) == (15, 21)
    for i in range(1, 10):
        assert moduli_dimensions(builtin(f"N{i}").lattice, 8) \
            == (19 - i, 27 - i), i


def test_genus4_global_count():
    gc = genus4_global_count()
    assert gc["quadrics"] == 14
    assert gc["cubics"] == 29
    assert gc["pgl"] == 24
    assert gc["total"] == 19
    assert gc["total"] == gc["quadrics"] + gc["cubics"] - gc["pgl"]


def test_lm_invariants():
    inv = lm_invariants(8, 5)
    assert inv["rank"] == 2
    assert inv["c1_sq"] == 14
    assert inv["c2"] == 5
    assert inv["chi"] == 6
    assert lm_invariants(6, 4)["chi"] == 5
    assert lm_invariants(4, 3)["chi"] == 4


# ---------------------------------------------------------------------------
# basis changes


def test_basis_change_u3_rescaled_hyperbolic():
    assert basis_change_check(u3().lattice, [[0, 1], [1, -1]],
                              [[0, 3], [3, 0]])


def test_basis_change_m6_diagonalizing_basis():
    sbasis = [[-1, 1, 1, 1, 1],
              [-1, 0, 1, 1, 1],
              [-1, 1, 0, 1, 1],
              [-1, 1, 1, 0, 1],
              [-1, 1, 1, 1, 0]]
    target = [[2 if i == j == 0 else (-2 if i == j else 0) for j in range(5)]
              for i in range(5)]
    assert basis_change_check(m6().lattice, sbasis, target)
    # cross-check: the claimed diagonal matches the congruence signature
    assert signature(target) == signature(
        [list(r) for r in m6().lattice.gram])


def test_basis_change_rejects_non_unimodular():
    with pytest.raises(NotUnimodular):
        basis_change_check(u3().lattice, [[2, 0], [0, 1]], [[24, 6], [6, 0]])
    with pytest.raises(DimensionMismatch):
        basis_change_check(u3().lattice, [[1, 0]], [[6]])


def test_basis_change_detects_wrong_target():
    assert not basis_change_check(u3().lattice, [[0, 1], [1, -1]],
                                  [[0, 3], [3, 2]])

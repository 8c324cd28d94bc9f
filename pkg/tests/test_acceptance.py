"""Acceptance gate: one test family per criterion, summarized as criterion N: PASS/FAIL."""
from fractions import Fraction

import pytest

from k3x import binforms as bf
from k3x import covering as cv
from k3x import curves as cu
from k3x import fibration as fb
from k3x import glue as gl
from k3x import monodromy as mo
from k3x import verify
from k3x.catalog import Catalog
from k3x.lattice import (FiniteQuadraticForm, direct_sum, discriminant_group, fqf_isomorphic, hyperbolic_plane,
                         lattice_of_types, root_lattice)
from k3x.matrix import smith_normal_form
from k3x.numfield import NumberField
from oracles import brute_force_root_count

CAT = Catalog()


def _load(name):
    return CAT.load(name)


def _diag(orders, qs):
    return FiniteQuadraticForm.diagonal(orders, [Fraction(q) for q in qs])


# 1. discriminant calculus

def test_criterion_01_u_a3_a15():
    lat = direct_sum(hyperbolic_plane(), lattice_of_types(["A3", "A15"]))
    d = discriminant_group(lat)
    assert d.orders == (4, 16)
    assert fqf_isomorphic(d.negate(), _diag([4, 16], ["3/4", "15/16"])) is not None


# 2. determinant 64 forms

def test_criterion_02_det64():
    forms = bf.enumerate_by_det(64)
    assert [f.gram for f in forms] == [[[2, 0], [0, 32]], [[4, 0], [0, 16]], [[8, 0], [0, 8]], [[8, 4], [4, 10]]]
    g1, _ = bf.dual_generators(forms[3])
    assert bf.element_order(g1) == 32
    lat = direct_sum(hyperbolic_plane(), lattice_of_types(["A3", "A15"]))
    assert bf.match_transcendental(lat) == []


# 3. glue constructions

def test_criterion_03_s35():
    over = gl.s35()
    assert abs(over.lattice.det()) == 72
    d = gl.disc_of_extension(over)
    assert sorted(d.orders) == [6, 12]
    assert fqf_isomorphic(d.negate(), _diag([6, 12], ["5/6", "-7/12"])) is not None
    assert gl.glue_pairings_check(gl.GlueSpec(gl.gamma35(), [gl.s35_vector()]), gl.S35_PAIRINGS)["pass"]


def test_criterion_03_s53():
    over = gl.s53()
    assert abs(over.lattice.det()) == 48
    d = gl.disc_of_extension(over)
    assert sorted(d.orders) == [4, 12]
    assert fqf_isomorphic(d.negate(), _diag([4, 12], ["3/4", "-5/12"])) is not None
    g = gl.gamma53()
    assert gl.glue_pairings_check(gl.GlueSpec(g, [gl.s53_vector(g)]), gl.S53_PAIRINGS)["pass"]


# 4. transcendental lattices of the eleven pairs

def test_criterion_04_pairs():
    pairs = {p["m"]: p for p in _load("transcendental")["pairs"]}
    assert sorted(pairs) == [2, 9, 11, 13, 27, 32, 35, 37, 38, 53, 55]
    assert [Fraction(x) for x in pairs[2]["minus_eps_sq"]] == [Fraction(1, 2), Fraction(17, 18)]
    assert [Fraction(x) for x in pairs[9]["minus_eps_sq"]] == [Fraction(9, 10)] * 2
    entries = verify.check_transcendental(CAT)
    assert len(entries) == 11
    for e in entries:
        m = int(e.check_id.rsplit("m", 1)[1])
        want = [Fraction(x) for x in pairs[m]["minus_eps_sq"]]
        assert all((a - b) % 2 == 0 for a, b in zip(e.details["minus_eps_sq"], want)), m
        assert e.details["witness"]["pass"], m
        glued = e.details["glued"]
        assert glued["pass"] and abs(glued["det"]) == 1 and glued["even"] and glued["signature"] == [3, 19], m


# 5. root extensions and root counts

@pytest.mark.parametrize("summ,idx,target,expect", [(["A2", "A2", "A3"], 3, "D7", False),
                                                     (["A2", "A11"], 3, "D13", False),
                                                     (["A1", "A5"], 2, "E6", True)])
def test_criterion_05_overlattices(summ, idx, target, expect):
    overs = gl.even_overlattices(lattice_of_types(summ), idx)
    assert any(gl.isometric_to_type(o.lattice, target) for o in overs) is expect


def test_criterion_05_root_counts():
    for n in range(1, 9):
        assert brute_force_root_count("A", n) == n * (n + 1) == len(gl.roots(root_lattice("A", n)).roots)
    assert brute_force_root_count("D", 7) == 84 == len(gl.roots(root_lattice("D", 7)).roots)
    assert brute_force_root_count("E", 6) == 72 == len(gl.roots(root_lattice("E", 6)).roots)


# 6. fibre root classes

def test_criterion_06_fibre_roots():
    over = gl.s35()
    f = over.coords(gl.gamma35().basis_vector("F"))
    assert gl.fiber_root_classes(over.lattice, f).components == ["A1", "A1", "A5", "A11"]
    lat, f6 = gl.s35_e6_presentation()
    assert gl.fiber_root_classes(lat, f6).components == ["A1", "A11", "E6"]


# 7. fibration calculus

SECTIONS = [([1, 1, 2, 4, 8, 8], [0, 0, 0, 0, 4, 4]), ([1, 1, 1, 1, 4, 16], [0, 0, 0, 0, 0, 8]),
            ([1, 1, 2, 4, 4, 12], [0, 0, 0, 0, 2, 6]), ([1, 3, 4, 4, 4, 8], [0, 0, 0, 2, 2, 4]),
            ([1, 2, 2, 3, 4, 12], [0, 1, 1, 0, 0, 6]), ([1, 2, 2, 3, 4, 12], [0, 1, 1, 0, 1, 3]),
            ([3, 3, 3, 3, 6, 6], [0, 0, 1, 1, 2, 2]), ([1, 1, 2, 5, 5, 10], [0, 0, 0, 2, 2, 2])]


@pytest.mark.parametrize("n,s", SECTIONS)
def test_criterion_07_sections(n, s):
    assert fb.is_torsion_candidate(fb.config(n), s)


def test_criterion_07_quotients():
    c = fb.config([1, 1, 2, 4, 8, 8])
    assert sorted(fb.quotient_config(c, [0, 0, 0, 0, 4, 4]).n) == sorted([2, 2, 4, 8, 4, 4])
    c = fb.config([1, 1, 1, 1, 4, 16])
    assert list(fb.quotient_config_ordered(c, [0, 0, 0, 0, 0, 8]).n) == [2, 2, 2, 2, 8, 8]
    rows = {r["m"]: r for r in _load("quotients")["rows"]}
    for m in (31, 44, 69, 92):
        r = rows[m]
        assert list(fb.quotient_config_ordered(fb.config(r["config"]), r["section"]).n) == r["image"], m


def test_criterion_07_shioda_tate():
    rows = {r["m"]: r for r in _load("theorem03")["rows"]}
    assert fb.shioda_tate_det(fb.config(rows[35]["config"]), 2) == 72
    assert fb.shioda_tate_det(fb.config(rows[53]["config"]), 3) == 48


# 8. classification table

def test_criterion_08_table():
    rows = _load("theorem03")["rows"]
    assert len(rows) == 17
    reps = fb.theorem_table_check(rows)
    assert all(r["pass"] for r in reps)
    trivial = [r for r in rows if any(g[0] == "(0)" for g in r["groups"])]
    assert len(trivial) == 9
    for r in trivial:
        c = fb.config(r["config"])
        assert "(0)" in fb.groups_by_name(fb.enumerate_torsion_groups(c))
        rep = fb.trivial_mw_report(c)
        assert rep["pass"] and rep["summand_orders"] == sorted(n for n in c.n if n > 1)


# 9. monodromy

def test_criterion_09_table():
    rows = _load("monodromy")["rows"]
    assert [r["group"] for r in rows] == ["Z/4", "D8", "S4", "A4", "S4"]
    for r in rows:
        ts = mo.triples_with_types(*r["cycles"], 4)
        assert len(ts) == 1
        assert mo.group_of(ts[0]).label == r["group"]
        assert mo.riemann_hurwitz_genus(4, r["cycles"]) == 0
        assert mo.galois_closure_genus(ts[0]) == 0


def test_criterion_09_maps():
    rows = {r["m"][0]: r for r in _load("monodromy")["rows"]}
    maps = _load("maps")["maps"]
    assert [m["degree"] for m in maps] == [4, 8, 12, 24]
    for obj in maps:
        row = rows[obj["m"][0]]
        orders = list(mo.branch_orders(mo.triples_with_types(*row["cycles"], 4)[0]))
        den = obj.get("corrected_den", obj["den"])
        w = cv.RationalMap.from_json({**obj, "den": den})
        assert cv.galois_consistency(w, orders, obj["degree"])["pass"], obj["m"]
        assert obj["degree"] == row["closure_degree"]


# 10. Weierstrass checks, read literally

E15 = _load("weierstrass")["e15"]
E33 = _load("weierstrass")["e33"]
K5 = NumberField([-5, 0, 1])


@pytest.mark.xfail(strict=True, reason="Delta of the 5-torsion surface has order 5 at s = 0, not s = 1")
def test_criterion_10_order_at_one():
    m = cv.WeierstrassModel.from_json(E15)
    assert cv.ord_at(m, 1) == 5


@pytest.mark.xfail(strict=True, reason="s -> -1/s satisfies the four literal constraints")
def test_criterion_10_no_map():
    pairs = [tuple(cv.parse_point(K5, x) for x in p) for p in E15["no_map"]]
    assert cv.fractional_linear_exists(K5, pairs) is None


@pytest.mark.xfail(strict=True, reason="s -> omega s needs x scaled by omega^2")
def test_criterion_10_tau2():
    m = cv.WeierstrassModel.from_json(E33)
    k = m.field
    a = E33["tau2"]
    sig = [cv.parse_point(k, x) for x in a["sigma"]]
    assert cv.verify_base_change_automorphism(m, sig, verify._u2(k, a["u2"]))["pass"]


def test_weierstrass_corrected_reading():
    m = cv.WeierstrassModel.from_json(E15)
    assert cv.ord_at(m, 0) == 5 and cv.ord_at(m, cv.INF) == 5
    mk = m.over(K5)
    for p in E15["order1_places"]:
        assert cv.ord_at(mk, cv.parse_point(K5, p)) == 1
    entries = {e.check_id: e for e in verify.check_weierstrass(CAT)}
    assert entries["weierstrass.e15.tau"].status == verify.PASS
    assert entries["weierstrass.e33.tau1"].status == verify.PASS
    for cid in ("weierstrass.e15.fibres", "weierstrass.e15.no_map", "weierstrass.e33.tau2"):
        assert entries[cid].status == verify.FLAGGED


# 11. curve catalog

CONFIGS = {"p1": [1, 1, 1, 2, 3, 16], "p2": [1, 1, 1, 2, 5, 14], "p3": [1, 1, 1, 5, 6, 10],
           "p4": [1, 1, 2, 2, 3, 15], "p5": [1, 1, 2, 2, 9, 9], "p6": [1, 1, 2, 3, 3, 14],
           "p7": [1, 1, 3, 3, 8, 8]}


@pytest.mark.parametrize("name", sorted(CONFIGS))
def test_criterion_11_curves(name):
    entry = _load(name)
    assert entry["claims"]["config"] == CONFIGS[name]
    rep = cu.verify_catalog_entry(entry)
    assert rep["pass"], [c for c in rep["checks"] if not c["pass"]]


def test_criterion_11_nodal_cubic():
    assert cu.nodal_cubic_identity()


# 12. property suites; the randomized parts live in the module test files

def test_criterion_12_property_suites():
    import test_binary_forms
    import test_exact_arithmetic
    import test_fibration_combinatorics
    import test_lattice_core
    import test_plane_curves
    test_exact_arithmetic.test_smith_normal_form_round_trip()
    test_lattice_core.test_q_is_well_defined_under_shifts()
    test_binary_forms.test_reduce_orbit_agreement()
    test_fibration_combinatorics.test_quotient_sum_24_over_all_prime_order_candidates()
    for expr, kind in test_plane_curves.NORMAL_FORMS:
        test_plane_curves.test_normal_forms(expr, kind)
    d, u, v = smith_normal_form([[2, 4], [6, 8]])
    assert [d[0][0], d[1][1]] == [2, 4]

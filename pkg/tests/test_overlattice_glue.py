from fractions import Fraction

import pytest

from k3x import glue as gl
from k3x.lattice import FiniteQuadraticForm, LatticeError, fqf_isomorphic, lattice_of_types, root_lattice
from oracles import brute_force_root_count

ROOT_CASES = [("A", n) for n in (1, 2, 3, 5, 7, 11)] + [("D", 4), ("D", 5), ("D", 7), ("E", 6), ("E", 7),
                                                       ("E", 8)]


@pytest.mark.parametrize("kind,n", ROOT_CASES)
def test_root_counts_match_brute_force(kind, n):
    rep = gl.roots(root_lattice(kind, n))
    assert len(rep.roots) == brute_force_root_count(kind, n)
    assert rep.components == [f"{kind}{n}"]


def test_root_count_formulas():
    for n in (1, 5, 11):
        assert brute_force_root_count("A", n) == n * (n + 1)
    assert brute_force_root_count("D", 7) == 84
    assert brute_force_root_count("E", 6) == 72


def test_roots_of_a_sum():
    rep = gl.roots(lattice_of_types(["A2", "E6", "A1"]))
    assert rep.components == gl.sort_types(["A1", "A2", "E6"])
    assert len(rep.roots) == 6 + 72 + 2


def test_roots_reject_indefinite():
    with pytest.raises(LatticeError):
        gl.roots(gl.gamma35())


def test_extend_rejects_bad_glue():
    base = root_lattice("A", 3)
    with pytest.raises(LatticeError):
        gl.extend(gl.GlueSpec(base, [[Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)]]))  # q = -3/4
    with pytest.raises(LatticeError):
        gl.extend(gl.GlueSpec(base, [[Fraction(1, 3), 0, 0]]))


def test_a1_a1_a1_a1_in_d4():
    over = gl.even_overlattices(lattice_of_types(["A1"] * 4), 2)
    assert any(gl.isometric_to_type(o.lattice, "D4") for o in over)


def test_s35():
    over = gl.s35()
    assert over.index == 2 and abs(over.lattice.det()) == 72
    d = gl.disc_of_extension(over).negate()
    assert fqf_isomorphic(d, FiniteQuadraticForm.diagonal([6, 12], [Fraction(5, 6), Fraction(-7, 12)]))
    spec = gl.GlueSpec(gl.gamma35(), [gl.s35_vector()])
    assert gl.glue_pairings_check(spec, gl.S35_PAIRINGS)["pass"]


def test_s53_and_tail_sign():
    over = gl.s53()
    assert over.index == 3 and abs(over.lattice.det()) == 48
    d = gl.disc_of_extension(over).negate()
    assert fqf_isomorphic(d, FiniteQuadraticForm.diagonal([4, 12], [Fraction(3, 4), Fraction(-5, 12)]))
    g = gl.gamma53()
    assert gl.glue_pairings_check(gl.GlueSpec(g, [gl.s53_vector(g)]), gl.S53_PAIRINGS)["pass"]
    bad = gl.glue_pairings_check(gl.GlueSpec(g, [gl.s53_vector(g, -1)]), gl.S53_PAIRINGS)
    assert not bad["pass"]


def test_glue_epsilons_generate_discriminant():
    for over, eps in ((gl.s35(), gl.s35_epsilons()), (gl.s53(), gl.s53_epsilons())):
        s = over.lattice
        vecs = [over.rational_coords(e) for e in eps]
        assert all(s.is_dual_vector(v) for v in vecs)


def test_root_refutations_and_confirmation():
    for summ, idx, target, expect in ((["A2", "A2", "A3"], 3, "D7", False), (["A2", "A11"], 3, "D13", False),
                                      (["A1", "A5"], 2, "E6", True)):
        overs = gl.even_overlattices(lattice_of_types(summ), idx)
        assert any(gl.isometric_to_type(o.lattice, target) for o in overs) is expect


def test_fibre_roots_s35():
    over = gl.s35()
    f = over.coords(gl.gamma35().basis_vector("F"))
    assert gl.fiber_root_classes(over.lattice, f).components == ["A1", "A1", "A5", "A11"]
    lat, f6 = gl.s35_e6_presentation()
    assert gl.fiber_root_classes(lat, f6).components == ["A1", "A11", "E6"]


def test_fibre_class_must_be_isotropic():
    lat, _ = gl.s35_e6_presentation()
    with pytest.raises(LatticeError):
        gl.fiber_root_classes(lat, lat.basis_vector("O"))


def test_case_analysis_for_a1_a5_a11():
    rep = gl.root_extension_case_analysis(["A1", "A5", "A11"])
    realized = [c["label"] for c in rep["cases"] if c["realized"]]
    assert realized and all("E6" in lab for lab in realized)

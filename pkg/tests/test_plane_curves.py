import json
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from k3x import curves as cu
from k3x.mpoly import MultiPoly, parse
from k3x.numfield import QQ
from oracles import groebner_milnor, sl2_word

DATA = Path(cu.__file__).parent / "data"
NAMES = ["p1", "p2", "p3", "p4", "p5", "p6", "p7"]

NORMAL_FORMS = ([(f"u^2 + w^{k + 1}", f"A{k}") for k in range(1, 12)]
                + [(f"u^2*w + w^{k - 1}", f"D{k}") for k in range(4, 10)]
                + [("u^3 + w^4", "E6"), ("u^3 + u*w^3", "E7"), ("u^3 + w^5", "E8")])


def _local(text):
    return parse(text, QQ, cu.LOCAL)


@pytest.mark.parametrize("expr,kind", NORMAL_FORMS)
def test_normal_forms(expr, kind):
    t, mu, _ = cu.ade_classify(_local(expr))
    assert t == kind
    assert mu == groebner_milnor(expr.replace("^", "**"))


def test_non_simple_singularity():
    with pytest.raises(cu.CurveError):
        cu.ade_classify(_local("u^3 + w^7"))
    with pytest.raises(cu.CurveError):
        cu.ade_classify(_local("u^4 + w^4"))


def test_non_isolated():
    with pytest.raises(cu.NonIsolated):
        cu.milnor_number(_local("u^2"))


def test_smooth_point():
    assert cu.ade_classify(_local("u + w^2"))[0] == "smooth"


@settings(max_examples=200)
@given(st.sampled_from(NORMAL_FORMS), st.lists(st.integers(-2, 2), min_size=1, max_size=4),
       st.integers(-2, 2), st.integers(-2, 2))
def test_type_is_invariant_under_coordinate_change(form, letters, c1, c2):
    expr, kind = form
    m = sl2_word(letters)
    u, w = MultiPoly.gens(QQ, cu.LOCAL)
    # linear change followed by a triangular quadratic shear
    nu = u * m[0][0] + w * m[0][1] + w * w * c1
    nw = u * m[1][0] + w * m[1][1] + u * u * c2
    g = _local(expr).subs([nu, nw], cu.LOCAL)
    t, mu, _ = cu.ade_classify(g)
    assert t == kind


def test_intersection_multiplicity():
    f = cu.curve_from_text("y*z - x^2")
    g = cu.curve_from_text("y")
    assert cu.intersection_multiplicity(f, g, cu.ProjPoint([0, 0, 1])) == 2
    h = cu.curve_from_text("y*z^2 - x^3")
    assert cu.intersection_multiplicity(h, g, cu.ProjPoint([0, 0, 1])) == 3


def test_points_and_lines():
    p = cu.parse_point("1,2,3")
    assert p == cu.ProjPoint([2, 4, 6])
    assert cu.collinear(cu.ProjPoint([1, 0, 0]), cu.ProjPoint([0, 1, 0]), cu.ProjPoint([1, 1, 0]))
    assert not cu.collinear(cu.ProjPoint([1, 0, 0]), cu.ProjPoint([0, 1, 0]), cu.ProjPoint([0, 0, 1]))
    with pytest.raises(ValueError):
        cu.ProjPoint([0, 0, 0])


def test_curve_validation():
    with pytest.raises(cu.CurveError):
        cu.curve_from_text("x^2 + y")


def _entry(name):
    return json.loads((DATA / f"{name}.json").read_text())


@pytest.mark.parametrize("name", NAMES)
def test_catalog_entries(name):
    rep = cu.verify_catalog_entry(_entry(name))
    assert rep["pass"], [c for c in rep["checks"] if not c["pass"]]


def test_corrupted_entry_fails():
    e = _entry("p6")
    e["poly"][0]["coeff"] = str(Fraction(e["poly"][0]["coeff"]) + 1)
    rep = cu.verify_catalog_entry(e)
    assert not rep["pass"]


def test_claimed_configurations():
    want = {"p1": [1, 1, 1, 2, 3, 16], "p2": [1, 1, 1, 2, 5, 14], "p3": [1, 1, 1, 5, 6, 10],
            "p4": [1, 1, 2, 2, 3, 15], "p5": [1, 1, 2, 2, 9, 9], "p6": [1, 1, 2, 3, 3, 14],
            "p7": [1, 1, 3, 3, 8, 8]}
    for name, cfg in want.items():
        assert _entry(name)["claims"]["config"] == cfg


def test_pencil_rule():
    c = cu.ProjPoint([1, 0, 0])
    pts = [(cu.ProjPoint([0, 1, 0]), "A9"), (cu.ProjPoint([0, 0, 1]), "A1"), (cu.ProjPoint([1, 1, 1]), "A2")]
    assert cu.pencil_configuration(c, [0, 0, 1], pts)["fibres"] == [1, 1, 1, 2, 3, 16]
    with pytest.raises(cu.CurveError):
        cu.pencil_configuration(c, [0, 0, 1], [(cu.ProjPoint([0, 1, 0]), "A1"), (cu.ProjPoint([1, 1, 0]), "A1")])


def test_nodal_cubic():
    assert cu.nodal_cubic_identity()
    f = cu.curve_from_text(cu.NODAL_CUBIC)
    for t in (1, 2, Fraction(-1, 3)):
        assert f.contains(cu.nodal_cubic_point(t))
    assert cu.classify_at(f, cu.ProjPoint([0, 0, 1])).ade_type == "A1"


def test_t3_instance():
    extra = json.loads((DATA / "curves_extra.json").read_text())["t3"]
    g = cu.curve_from_text(extra["poly"])
    f = cu.curve_from_text(cu.NODAL_CUBIC)
    assert cu.intersection_multiplicity(f, g, cu.ProjPoint([1, 1, 0])) == 5
    assert cu.intersection_multiplicity(f, g, cu.ProjPoint([-1, 1, -2])) == 4
    sing = cu.singular_rational_points_on_line(g, [1, 1, 0])
    assert sing == [cu.ProjPoint([-1, 1, 2])]
    assert cu.collinear(cu.ProjPoint([-1, 1, -2]), sing[0], cu.ProjPoint([0, 0, 1]))
    assert cu.t3_constraint_factor(Fraction(-1)) == ["s^6 - 1"]


@pytest.mark.parametrize("name", NAMES)
def test_standard_cremona_gives_quintic(name):
    curve, _ = cu.load_entry(_entry(name))
    assert cu.cremona("standard", curve).degree == 5


def test_cremona_kinds():
    c = cu.curve_from_text("x^2 + y^2 + z^2")
    assert cu.cremona("standard", c).degree == 4
    with pytest.raises(cu.CurveError):
        cu.cremona("cubic", c)

import json
from pathlib import Path

import pytest
import sympy as sp

from k3x import covering as cv
from k3x import monodromy as mo
from k3x.numfield import NumberField
from oracles import sympy_delta_orders, sympy_profile, triple_classes_by_brute_force

DATA = Path(cv.__file__).parent / "data"
MONO = json.loads((DATA / "monodromy.json").read_text())
MAPS = json.loads((DATA / "maps.json").read_text())["maps"]
WEIER = json.loads((DATA / "weierstrass.json").read_text())


@pytest.mark.parametrize("row", MONO["rows"], ids=lambda r: f"m{r['m'][0]}")
def test_triples_against_brute_force(row):
    types = [tuple(t) for t in row["cycles"]]
    triples = mo.triples_with_types(*types, 4)
    assert len(triples) == triple_classes_by_brute_force(types, 4) == 1
    t = triples[0]
    assert t.is_valid() and t.types() == tuple(mo.normalize_type(x) for x in types)
    info = mo.group_of(t)
    assert info.label == row["group"] and info.order == row["closure_degree"]
    assert mo.riemann_hurwitz_genus(4, types) == 0
    assert mo.galois_closure_genus(t) == 0


def test_more_triple_counts():
    for types in ([(3, 1), (2, 2), (3, 1)], [(2, 1, 1), (2, 1, 1), (3, 1)], [(2, 2), (2, 2), (2, 2)]):
        assert len(mo.triples_with_types(*types, 4)) == triple_classes_by_brute_force(types, 4)
    types = [(2, 1, 1, 1), (4, 1), (4, 1)]
    assert len(mo.triples_with_types(*types, 5)) == triple_classes_by_brute_force(types, 5)


def test_parse_cycles_and_errors():
    assert mo.parse_cycles("2,2;3,1;3,1") == [(2, 2), (3, 1), (3, 1)]
    with pytest.raises(ValueError):
        mo.parse_cycles("2,2;3,1")
    with pytest.raises(ValueError):
        mo.triples_with_types((2, 2), (3,), (3, 1), 4)
    with pytest.raises(ValueError):
        mo.riemann_hurwitz_genus(4, [(2, 1, 1), (1, 1, 1, 1), (1, 1, 1, 1)])


def _profile_args(obj, den_key="den"):
    ext = None
    if obj["field"]["minpoly"] == ["-3", "0", "1"]:
        ext = sp.sqrt(3)
    num = obj["num"].replace("^", "**").replace("v", "sqrt(3)")
    den = obj[den_key].replace("^", "**").replace("v", "sqrt(3)")
    return num, den, ext


@pytest.mark.parametrize("obj", MAPS, ids=lambda o: f"m{o['m'][0]}")
def test_profiles_against_sympy(obj):
    key = "corrected_den" if "corrected_den" in obj else "den"
    w = cv.RationalMap.from_json({**obj, "den": obj[key]})
    num, den, ext = _profile_args(obj, key)
    for at in (0, 1, "inf"):
        pt = cv.INF if at == "inf" else w.field(at)
        assert cv.ramification_profile(w, pt) == sympy_profile(num, den, at, ext)


def test_degree_8_map_with_stated_denominator_is_not_galois():
    obj = next(o for o in MAPS if o["m"] == [31])
    w = cv.RationalMap.from_json(obj)
    rep = cv.galois_consistency(w, [2, 2, 4], 8)
    assert not rep["pass"] and rep["profiles"]["inf"] == [6, 2]


def test_rational_map_validation():
    with pytest.raises(ValueError):
        cv.RationalMap.from_json({"num": "z^2 - 1", "den": "z - 1"})
    with pytest.raises(ValueError):
        cv.RationalMap.from_json({"num": "3", "den": "1"})


def test_e15_discriminant_against_sympy():
    e = WEIER["e15"]
    m = cv.WeierstrassModel.from_json(e)
    ref = sympy_delta_orders(e["A"].replace("^", "**"), e["B"].replace("^", "**"))
    assert ref["s"] == 5 and ref["s**2 - 11*s - 1"] == 1 and ref["inf"] == 5
    assert cv.ord_at(m, 0) == 5 and cv.ord_at(m, cv.INF) == 5
    assert cv.ord_at(m, 1) == 0
    k = NumberField([-5, 0, 1])
    mk = m.over(k)
    v = k.gen()
    assert cv.ord_at(mk, (11 + 5 * v) / 2) == 1 and cv.ord_at(mk, (11 - 5 * v) / 2) == 1


def test_e15_involution_and_no_map():
    k = NumberField([-5, 0, 1])
    m = cv.WeierstrassModel.from_json(WEIER["e15"]).over(k)
    one = k.one()
    assert cv.verify_base_change_automorphism(m, (0, -1, 1, 0), ([one], [0, 0, one]))["pass"]
    v = k.gen()
    a, b = (11 + 5 * v) / 2, (11 - 5 * v) / 2
    # s -> -1/s meets the literal constraints (0 <-> inf, a <-> b)
    lit = cv.fractional_linear_exists(k, [(0, cv.INF), (cv.INF, 0), (a, b), (b, a)])
    assert lit is not None and cv.apply_fractional_linear(k, lit, a) == b
    assert cv.fractional_linear_exists(k, [(0, 0), (cv.INF, cv.INF), (a, b), (b, a)]) is None


def test_e33_automorphisms():
    e = WEIER["e33"]
    m = cv.WeierstrassModel.from_json(e)
    k = m.field
    v = k.gen()
    om = (-1 + v) / 2
    assert om ** 3 == k.one()
    for p in (-1, -om, -om * om, cv.INF):
        assert cv.ord_at(m, p) == 3
    one = k.one()
    assert cv.verify_base_change_automorphism(m, (-1, 2, 1, 1), ([-3 * one], [one, 2 * one, one]))["pass"]
    assert cv.verify_base_change_automorphism(m, (om, 0, 0, 1), ([om * om], [one]))["pass"]
    assert not cv.verify_base_change_automorphism(m, (om, 0, 0, 1), ([om], [one]))["pass"]


def test_degenerate_fractional_linear():
    m = cv.WeierstrassModel.from_json(WEIER["e15"])
    with pytest.raises(ValueError):
        cv.verify_base_change_automorphism(m, (1, 1, 1, 1), ([1], [1]))

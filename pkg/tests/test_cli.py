import json
import shutil
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from k3x import cli, verify
from k3x.catalog import Catalog, CatalogError, default_dir

DATA = default_dir()


@pytest.fixture(scope="module")
def ledger():
    return verify.run_all()


def run(args, capsys):
    code = cli.main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_shipped_catalog_has_no_failures(ledger):
    assert ledger["summary"]["fail"] == 0
    ids = [e["check_id"] for e in ledger["entries"]]
    assert ids == sorted(ids) and len(set(ids)) == len(ids)
    for e in ledger["entries"]:
        assert e["status"] in ("pass", "flagged")
        assert (e["status"] == "flagged") == ("open_question" in e)


def test_flagged_entries(ledger):
    flagged = sorted(e["check_id"] for e in ledger["entries"] if e["status"] == "flagged")
    assert flagged == ["glue.s53", "maps.m031", "monodromy.stabilizers", "mw.quotient.m092",
                       "weierstrass.e15.fibres", "weierstrass.e15.no_map", "weierstrass.e33.tau2"]


def test_verify_exit_zero(tmp_path, capsys):
    out = tmp_path / "ledger.json"
    code, text, _ = run(["verify", "all", "--out", str(out)], capsys)
    assert code == 0
    assert out.read_text() == text
    assert json.loads(text)["summary"]["fail"] == 0


def test_deterministic_across_runs_and_jobs(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    verify.run_all(None, str(a), jobs=1)
    verify.run_all(None, str(b), jobs=3)
    assert a.read_bytes() == b.read_bytes()


def test_corrupted_p6_exits_one(tmp_path, capsys):
    cat = tmp_path / "cat"
    shutil.copytree(DATA, cat)
    p = cat / "p6.json"
    d = json.loads(p.read_text())
    d["poly"][0]["coeff"] = str(Fraction(d["poly"][0]["coeff"]) + 1)
    p.write_text(json.dumps(d))
    code, text, _ = run(["verify", "all", "--catalog", str(cat)], capsys)
    assert code == 1
    failed = {e["check_id"] for e in json.loads(text)["entries"] if e["status"] == "fail"}
    assert failed == {"catalog.integrity", "curves.p6"}


def test_missing_catalog_exits_two(tmp_path, capsys):
    code, _, err = run(["verify", "all", "--catalog", str(tmp_path / "nope")], capsys)
    assert code == 2 and "does not exist" in err


def test_malformed_catalog_exits_two(tmp_path, capsys):
    cat = tmp_path / "cat"
    shutil.copytree(DATA, cat)
    (cat / "glue.json").write_text("{not json")
    code, _, err = run(["verify", "all", "--catalog", str(cat)], capsys)
    assert code == 2 and "malformed" in err


def test_env_var_overrides_catalog(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("K3X_CATALOG", str(tmp_path / "missing"))
    code, _, _ = run(["verify", "all"], capsys)
    assert code == 2
    monkeypatch.setenv("K3X_CATALOG", str(DATA))
    assert Catalog().root == DATA


def test_catalog_errors(tmp_path):
    with pytest.raises(CatalogError):
        Catalog(tmp_path / "x")
    with pytest.raises(CatalogError):
        Catalog(tmp_path).load("p1")
    with pytest.raises(CatalogError):
        Catalog(tmp_path).checksums()


def test_text_renderer(capsys):
    code, text, _ = run(["verify", "all", "--text"], capsys)
    assert code == 0
    assert text.splitlines()[-1].endswith("0 fail")
    assert any(line.startswith("FLAGGED") for line in text.splitlines())


def test_module_commands(tmp_path, capsys):
    code, text, _ = run(["glue", "s35"], capsys)
    assert code == 0 and json.loads(text)["index"] == 2
    lat = tmp_path / "s35.json"
    lat.write_text(json.dumps(json.loads(text)["lattice"]))
    code, text, _ = run(["binforms", "match", "--lattice", str(lat)], capsys)
    assert code == 0 and [m["form"]["gram"] for m in json.loads(text)["matches"]] == [[[6, 0], [0, 12]]]
    code, text, _ = run(["binforms", "enum", "--det", "64"], capsys)
    assert json.loads(text)["count"] == 4
    code, text, _ = run(["mw", "quotient", "--config", "1,1,2,4,8,8", "--section", "0,0,0,0,4,4"], capsys)
    assert json.loads(text)["quotient"] == [2, 2, 4, 8, 4, 4]
    code, text, _ = run(["mw", "candidates", "--config", "1,1,1,1,4,16"], capsys)
    assert "Z/4" in [g["group"] for g in json.loads(text)["groups"]]
    code, text, _ = run(["mw", "table"], capsys)
    assert code == 0 and json.loads(text)["pass"]
    code, text, _ = run(["monodromy", "triples", "--degree", "4", "--cycles", "2,2;3,1;3,1"], capsys)
    assert json.loads(text)["triples"][0]["group"]["label"] == "A4"
    code, text, _ = run(["curve", "verify", "--entry", "p1"], capsys)
    assert code == 0 and json.loads(text)["pass"]


def test_profile_fibres_and_classify(tmp_path, capsys):
    maps = json.loads((DATA / "maps.json").read_text())["maps"]
    f = tmp_path / "m69.json"
    f.write_text(json.dumps(next(m for m in maps if m["m"] == [69])))
    code, text, _ = run(["monodromy", "profile", "--map", str(f), "--at", "inf"], capsys)
    assert json.loads(text)["profile"] == [3, 3, 3, 3]
    model = tmp_path / "e15.json"
    model.write_text(json.dumps(json.loads((DATA / "weierstrass.json").read_text())["e15"]))
    code, text, _ = run(["weierstrass", "fibers", "--model", str(model)], capsys)
    assert sorted(x["ord"] for x in json.loads(text)["fibres"]) == [1, 5, 5]
    poly = tmp_path / "f.json"
    poly.write_text(json.dumps({"poly": "y^2*z - x^3 - x^2*z"}))
    code, text, _ = run(["curve", "classify", "--poly", str(poly), "--point", "0,0,1"], capsys)
    assert json.loads(text)["type"] == "A1"


def test_input_errors(tmp_path, capsys):
    code, _, _ = run(["glue", "extend", "--spec", str(tmp_path / "none.json")], capsys)
    assert code == 2
    code, _, _ = run(["mw", "candidates", "--config", "1,1,1"], capsys)
    assert code == 2
    code, _, _ = run(["monodromy", "triples", "--degree", "4", "--cycles", "2,2"], capsys)
    assert code == 2


def test_console_script_entry_point():
    res = subprocess.run([sys.executable, "-m", "k3x.cli", "glue", "s53", "--text"], capture_output=True, text=True)
    assert res.returncode == 0 and "index: 3" in res.stdout

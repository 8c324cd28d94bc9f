"""Command-line front end.  Every command prints a JSON report (or text with --text)."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Callable, Sequence

from . import binforms as bf
from . import covering as cv
from . import curves as cu
from . import fibration as fb
from . import glue as gl
from . import monodromy as mo
from . import verify
from .catalog import Catalog, CatalogError
from .lattice import Lattice, discriminant_group

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    """Bad arguments or unreadable input files."""


def _read_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError as exc:
        raise InputError(f"no such file: {path}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {path}: {exc}") from exc


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace("[", "").replace("]", "").split(",") if x.strip()]
    except ValueError as exc:
        raise InputError(f"expected comma-separated integers, got {text!r}") from exc


def _disc_json(lat: Lattice) -> dict:
    d = discriminant_group(lat)
    return d.to_json()


def _lattice_report(lat: Lattice) -> dict:
    return {"rank": lat.rank, "det": lat.det(), "signature": list(lat.signature()),
            "even": lat.is_even(), "discriminant_form": _disc_json(lat)}


# -- glue --------------------------------------------------------------------------------------

def cmd_glue_extend(a: argparse.Namespace) -> dict:
    spec = gl.GlueSpec.from_json(_read_json(a.spec))
    over = gl.extend(spec)
    return {"index": over.index, **_lattice_report(over.lattice), "lattice": over.lattice.to_json()}


def _named_glue(name: str) -> dict:
    over = gl.s35() if name == "s35" else gl.s53()
    pairs = gl.S35_PAIRINGS if name == "s35" else gl.S53_PAIRINGS
    base = over.base
    vec = gl.s35_vector(base) if name == "s35" else gl.s53_vector(base)
    pc = gl.glue_pairings_check(gl.GlueSpec(base, [vec]), pairs)
    return {"index": over.index, **_lattice_report(over.lattice), "pairings": pc,
            "lattice": over.lattice.to_json(), "pass": pc["pass"]}


def cmd_glue_roots(a: argparse.Namespace) -> dict:
    lat = Lattice.from_json(_read_json(a.lattice))
    rep = gl.roots(lat)
    return {**rep.to_json(), "type": rep.type_string}


# -- binary forms --------------------------------------------------------------------------------

def cmd_binforms_enum(a: argparse.Namespace) -> dict:
    forms = bf.enumerate_by_det(a.det)
    return {"det": a.det, "count": len(forms), "forms": [f.to_json() for f in forms]}


def cmd_binforms_match(a: argparse.Namespace) -> dict:
    lat = Lattice.from_json(_read_json(a.lattice))
    matches = bf.match_transcendental(lat)
    return {"det": abs(lat.det()), "matches": [{"form": f.to_json(), "witness": w} for f, w in matches]}


# -- Mordell-Weil combinatorics ------------------------------------------------------------------

def cmd_mw_candidates(a: argparse.Namespace) -> dict:
    c = fb.config(_ints(a.config))
    groups = fb.enumerate_torsion_groups(c)
    return {"config": list(c.n), "torsion_candidates": [list(s) for s in fb.torsion_candidates(c)],
            "groups": [g.to_json() for g in groups]}


def cmd_mw_quotient(a: argparse.Namespace) -> dict:
    c = fb.config(_ints(a.config), ordered=False)
    s = _ints(a.section)
    q = fb.quotient_config_ordered(c, s)
    return {"config": list(c.n), "section": list(c.reduce(s)), "order": c.order_of(s),
            "candidate": fb.is_torsion_candidate(c, s), "quotient": list(q.n),
            "quotient_sorted": list(q.sorted().n)}


def cmd_mw_table(a: argparse.Namespace) -> dict:
    obj = _read_json(a.catalog) if a.catalog else Catalog().load("theorem03")
    rows = obj["rows"] if isinstance(obj, dict) else obj
    reps = fb.theorem_table_check(rows)
    return {"rows": reps, "pass": all(r["pass"] for r in reps)}


# -- monodromy and coverings ---------------------------------------------------------------------

def cmd_monodromy_triples(a: argparse.Namespace) -> dict:
    types = mo.parse_cycles(a.cycles)
    triples = mo.triples_with_types(*types, a.degree)
    out = []
    for t in triples:
        out.append({**t.to_json(), "group": mo.group_of(t).to_json(),
                    "closure_genus": mo.galois_closure_genus(t)})
    return {"degree": a.degree, "cycles": [list(t) for t in types],
            "genus": mo.riemann_hurwitz_genus(a.degree, types), "classes": len(out), "triples": out}


def cmd_monodromy_profile(a: argparse.Namespace) -> dict:
    w = cv.RationalMap.from_json(_read_json(a.map))
    pt = cv.parse_point(w.field, a.at)
    prof = cv.ramification_profile(w, pt)
    return {"degree": w.degree, "at": a.at, "profile": list(prof), "galois": cv.is_galois_profile(prof)}


def cmd_weierstrass_fibers(a: argparse.Namespace) -> dict:
    m = cv.WeierstrassModel.from_json(_read_json(a.model))
    fib = cv.weierstrass_fiber_orders(m)
    return {"chi": m.chi, "fibres": fib, "euler_number": 12 * m.chi}


# -- curves ------------------------------------------------------------------------------------------

def _entry(name: str) -> dict:
    p = Path(name)
    if p.suffix == ".json" or p.exists():
        return _read_json(name)
    return Catalog().load(name)


def cmd_curve_verify(a: argparse.Namespace) -> dict:
    return cu.verify_catalog_entry(_entry(a.entry))


def cmd_curve_classify(a: argparse.Namespace) -> dict:
    obj = _read_json(a.poly)
    if isinstance(obj, list):
        obj = {"poly": obj}
    curve, field = cu.load_entry(obj)
    rep = cu.classify_at(curve, cu.parse_point(a.point, field))
    return rep.to_json()


# -- verify ---------------------------------------------------------------------------------------

def cmd_verify_all(a: argparse.Namespace) -> dict:
    return verify.run_all(a.catalog, a.out, a.jobs)


# -- rendering and dispatch ------------------------------------------------------------------------

def render(obj: Any, indent: int = 0) -> str:
    """Indented key: value text for an arbitrary JSON report."""
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines.append(render(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_inline(v)}")
        return "\n".join(lines)
    if isinstance(obj, list):
        return "\n".join(f"{pad}- {_inline(v)}" if _flat(v) else f"{pad}-\n{render(v, indent + 1)}"
                         for v in obj)
    return f"{pad}{_inline(obj)}"


def _flat(v: Any) -> bool:
    if isinstance(v, dict):
        return not v
    if isinstance(v, list):
        return all(not isinstance(x, (dict, list)) or _flat(x) for x in v)
    return True


def _inline(v: Any) -> str:
    return json.dumps(v) if isinstance(v, (list, dict)) else str(v)


def _code(report: dict) -> int:
    if "summary" in report and "entries" in report:
        return verify.exit_code(report)
    return EXIT_FAIL if report.get("pass") is False else EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="k3x", description="Exact certification of extremal elliptic K3 data.")
    p.add_argument("--text", action="store_true", help="human-readable output instead of JSON")
    sub = p.add_subparsers(dest="group", required=True)

    def cmd(parent: Any, name: str, fn: Callable, help_: str) -> argparse.ArgumentParser:
        sp = parent.add_parser(name, help=help_)
        sp.set_defaults(fn=fn)
        sp.add_argument("--text", action="store_true", default=argparse.SUPPRESS,
                        help="human-readable output instead of JSON")
        return sp

    g = sub.add_parser("glue", help="overlattices and root systems").add_subparsers(dest="cmd", required=True)
    cmd(g, "extend", cmd_glue_extend, "overlattice from a glue spec").add_argument("--spec", required=True)
    cmd(g, "s35", lambda a: _named_glue("s35"), "the index-2 construction")
    cmd(g, "s53", lambda a: _named_glue("s53"), "the index-3 construction")
    cmd(g, "roots", cmd_glue_roots, "root system of a definite lattice").add_argument("--lattice", required=True)

    b = sub.add_parser("binforms", help="binary quadratic forms").add_subparsers(dest="cmd", required=True)
    cmd(b, "enum", cmd_binforms_enum, "reduced even forms of a determinant").add_argument("--det", type=int,
                                                                                         required=True)
    cmd(b, "match", cmd_binforms_match, "forms with the negated discriminant form").add_argument(
        "--lattice", required=True)

    m = sub.add_parser("mw", help="torsion sections on fibre configurations").add_subparsers(
        dest="cmd", required=True)
    cmd(m, "candidates", cmd_mw_candidates, "torsion candidates and groups").add_argument("--config", required=True)
    q = cmd(m, "quotient", cmd_mw_quotient, "fibre orders after a prime-order quotient")
    q.add_argument("--config", required=True)
    q.add_argument("--section", required=True)
    cmd(m, "table", cmd_mw_table, "check a classification table").add_argument("--catalog")

    mon = sub.add_parser("monodromy", help="branch cycles and map profiles").add_subparsers(
        dest="cmd", required=True)
    t = cmd(mon, "triples", cmd_monodromy_triples, "permutation triples of given cycle types")
    t.add_argument("--degree", type=int, required=True)
    t.add_argument("--cycles", required=True)
    pr = cmd(mon, "profile", cmd_monodromy_profile, "ramification profile of a rational map")
    pr.add_argument("--map", required=True)
    pr.add_argument("--at", required=True)

    w = sub.add_parser("weierstrass", help="Weierstrass models").add_subparsers(dest="cmd", required=True)
    cmd(w, "fibers", cmd_weierstrass_fibers, "singular fibres").add_argument("--model", required=True)

    c = sub.add_parser("curve", help="plane curve singularities").add_subparsers(dest="cmd", required=True)
    cmd(c, "verify", cmd_curve_verify, "certify a catalogue entry").add_argument("--entry", required=True)
    cl = cmd(c, "classify", cmd_curve_classify, "ADE type at a point")
    cl.add_argument("--poly", required=True)
    cl.add_argument("--point", required=True)

    v = sub.add_parser("verify", help="aggregate ledger").add_subparsers(dest="cmd", required=True)
    va = cmd(v, "all", cmd_verify_all, "run every catalogue check")
    va.add_argument("--catalog", help="catalogue directory (default: $K3X_CATALOG or the shipped data)")
    va.add_argument("--out", help="write the JSON ledger here")
    va.add_argument("--jobs", type=int, default=1, help="worker processes")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.fn(args)
    except (InputError, CatalogError, OSError) as exc:
        print(f"k3x: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ValueError, ArithmeticError, KeyError, TypeError) as exc:
        print(f"k3x: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    report = verify.to_plain(report)
    if args.text:
        is_ledger = "entries" in report and "summary" in report
        print(verify.render_text(report) if is_ledger else render(report))
    else:
        print(verify.dumps(report), end="")
    return _code(report)


if __name__ == "__main__":
    sys.exit(main())

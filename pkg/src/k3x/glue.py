"""Overlattices, root systems and gluing along discriminant forms."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterable, Sequence

from . import matrix as mx
from .lattice import (DiscriminantMap, FiniteQuadraticForm, Lattice, LatticeError,
                      direct_sum, discriminant_group,
                      lattice_of_types, root_lattice)
from .rational import Q, qstr


@dataclass
class GlueSpec:
    base: Lattice
    glue: list

    def __init__(self, base: Lattice, glue: Iterable[Sequence] = ()):
        self.base = base
        self.glue = [[Q(x) for x in g] for g in glue]
        for g in self.glue:
            if len(g) != base.rank:
                raise LatticeError("glue vector length does not match base rank")

    def to_json(self) -> dict:
        return {"base": self.base.to_json(), "glue": [[qstr(x) for x in g] for g in self.glue]}

    @classmethod
    def from_json(cls, obj: dict) -> "GlueSpec":
        return cls(Lattice.from_json(obj["base"]), obj.get("glue", []))


@dataclass
class Overlattice:
    """An overlattice with its basis written in the coordinates of the base."""

    base: Lattice
    basis: list
    lattice: Lattice
    index: int

    def coords(self, v: Sequence) -> list[int]:
        """Integer coordinates of a base-coordinate vector in the overlattice basis."""
        x = mx.solve(mx.transpose(self.basis), [Q(c) for c in v])
        if x is None or any(Fraction(c).denominator != 1 for c in x):
            raise LatticeError("vector does not lie in the overlattice")
        return [int(c) for c in x]

    def rational_coords(self, v: Sequence) -> list[Fraction]:
        """Rational coordinates in the overlattice basis (for dual vectors)."""
        x = mx.solve(mx.transpose(self.basis), [Q(c) for c in v])
        if x is None:
            raise LatticeError("vector is not in the span of the overlattice")
        return x

    def contains(self, v: Sequence) -> bool:
        try:
            self.coords(v)
            return True
        except LatticeError:
            return False


def _check_glue(spec: GlueSpec) -> None:
    base = spec.base
    for k, g in enumerate(spec.glue):
        if not base.is_dual_vector(g):
            raise LatticeError(f"glue vector {k} pairs non-integrally with the base")
        if base.norm(g).denominator != 1 or base.norm(g).numerator % 2:
            raise LatticeError(f"glue vector {k} has non-even norm {base.norm(g)}")
        for j in range(k):
            if base.pair(g, spec.glue[j]).denominator != 1:
                raise LatticeError(f"glue vectors {j} and {k} pair non-integrally")


def extend(spec: GlueSpec) -> Overlattice:
    """Even overlattice generated by the base and the glue vectors."""
    _check_glue(spec)
    base = spec.base
    n = base.rank
    gens = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)] + spec.glue
    den = mx.common_denominator(gens)
    ints = [[int(x * den) for x in g] for g in gens]
    h = mx.hnf_rows(ints)
    basis = [[Fraction(x, den) for x in r] for r in h]
    gram = [[base.pair(a, b) for b in basis] for a in basis]
    if any(x.denominator != 1 for r in gram for x in r):
        raise LatticeError("extension is not integral")
    lat = Lattice([[int(x) for x in r] for r in gram])
    ratio = Fraction(abs(base.det()), abs(lat.det()))
    index = isqrt(ratio.numerator)
    if ratio.denominator != 1 or index * index != ratio.numerator:
        raise ArithmeticError("determinant relation violated")
    # the index also equals den^n / |det(h)|
    if Fraction(den ** n, abs(mx.det_bareiss(h))) != index:
        raise ArithmeticError("index mismatch")
    return Overlattice(base, basis, lat, index)


def glue_pairings_check(spec: GlueSpec, expected: Sequence[tuple[str, int]],
                        vector: Sequence | None = None) -> dict:
    """Check stated pairings of a glue vector (default: the first) with labels.

    The label ``"self"`` stands for the vector's own norm.
    """
    base = spec.base
    v = [Q(x) for x in (vector if vector is not None else spec.glue[0])]
    rows = []
    ok = True
    for label, value in expected:
        if label == "self":
            got = base.norm(v)
        else:
            got = base.pair(v, base.basis_vector(label))
        passed = got == value
        ok &= passed
        rows.append({"label": label, "expected": value, "got": qstr(got), "pass": passed})
    return {"pass": ok, "checks": rows}


def disc_of_extension(over: Overlattice) -> FiniteQuadraticForm:
    return discriminant_group(over.lattice)


# -- roots -------------------------------------------------------------------------

@dataclass
class RootSystemReport:
    roots: list
    components: list

    def to_json(self) -> dict:
        return {"root_count": len(self.roots), "components": list(self.components)}

    @property
    def type_string(self) -> str:
        return "+".join(self.components) if self.components else "0"


def _ldl(a: Sequence[Sequence[int]]) -> tuple[list[Fraction], list[list[Fraction]]]:
    """a = sum_i d_i (x_i + sum_{j>i} mu_ij x_j)^2 for positive definite a."""
    n = len(a)
    m = [[Fraction(x) for x in r] for r in a]
    d = [Fraction(0)] * n
    mu = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        d[i] = m[i][i]
        if d[i] <= 0:
            raise LatticeError("form is not definite")
        for j in range(i + 1, n):
            mu[i][j] = m[i][j] / d[i]
        for j in range(i + 1, n):
            for k in range(i + 1, n):
                m[j][k] -= d[i] * mu[i][j] * mu[i][k]
    return d, mu


def short_vectors(pos_gram: Sequence[Sequence[int]], bound: int) -> list[list[int]]:
    """All nonzero x with x^T A x <= bound for positive definite integer A."""
    n = len(pos_gram)
    d, mu = _ldl(pos_gram)
    out: list[list[int]] = []
    x = [0] * n

    def rec(i: int, remaining: Fraction) -> None:
        if i < 0:
            if any(x):
                out.append(list(x))
            return
        c = sum((mu[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        t = remaining / d[i]
        # integers k with (k + c)^2 <= t
        r = isqrt(t.numerator // t.denominator) + 1
        centre = -c
        lo = int(centre.__floor__()) - r
        hi = int(centre.__ceil__()) + r
        for k in range(lo, hi + 1):
            s = (k + c) * (k + c)
            if s <= t:
                x[i] = k
                rec(i - 1, remaining - d[i] * s)
        x[i] = 0

    rec(n - 1, Fraction(bound))
    return out


_EXCEPTIONAL = {(6, 72): "E6", (7, 126): "E7", (8, 240): "E8"}


def dynkin_type(rank: int, count: int) -> str:
    if count == rank * (rank + 1):
        return f"A{rank}"
    if rank >= 4 and count == 2 * rank * (rank - 1):
        return f"D{rank}"
    if (rank, count) in _EXCEPTIONAL:
        return _EXCEPTIONAL[(rank, count)]
    raise LatticeError(f"no irreducible root system of rank {rank} with {count} roots")


def sort_types(types: Iterable[str]) -> list[str]:
    order = {"A": 0, "D": 1, "E": 2}
    return sorted(types, key=lambda t: (order[t[0]], int(t[1:])))


def roots(lat: Lattice) -> RootSystemReport:
    """All vectors of norm -2 in a negative-definite lattice, with their type."""
    if lat.rank == 0:
        return RootSystemReport([], [])
    pos = [[-x for x in r] for r in lat.gram]
    rs = short_vectors(pos, 2)
    rs = [r for r in rs if lat.norm(r) == -2]
    return RootSystemReport(sorted(rs), classify_roots(lat, rs))


def classify_roots(lat: Lattice, rs: Sequence[Sequence[int]]) -> list[str]:
    n = len(rs)
    comp = list(range(n))

    def find(i: int) -> int:
        while comp[i] != i:
            comp[i] = comp[comp[i]]
            i = comp[i]
        return i

    gr = [mx.mat_vec(lat.gram, r) for r in rs]
    for i in range(n):
        for j in range(i + 1, n):
            if find(i) != find(j) and sum(a * b for a, b in zip(gr[i], rs[j])) != 0:
                comp[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    types = []
    for members in groups.values():
        rk = mx.rank([rs[i] for i in members])
        types.append(dynkin_type(rk, len(members)))
    return sort_types(types)


# -- overlattice enumeration ------------------------------------------------------------

def isotropic_subgroups(form: FiniteQuadraticForm, order: int) -> list[frozenset]:
    """All subgroups of the given order on which q vanishes identically."""
    zero = form.reduce([0] * len(form.orders))
    iso = [e for e in form.elements() if e != zero and form.qval(e) == 0]
    found: set[frozenset] = set()
    seen: set[frozenset] = set()
    frontier = [frozenset([zero])]
    while frontier:
        nxt = []
        for grp in frontier:
            for x in iso:
                if x in grp or order % form.element_order(x):
                    continue
                new = _span(form, grp, x)
                if new is None or len(new) > order or order % len(new):
                    continue
                if new in seen:
                    continue
                seen.add(new)
                if any(form.qval(e) != 0 for e in new):
                    continue
                if len(new) == order:
                    found.add(new)
                else:
                    nxt.append(new)
        frontier = nxt
    return sorted(found, key=lambda s: sorted(s))


def _span(form: FiniteQuadraticForm, grp: frozenset, x: tuple) -> frozenset | None:
    out = set(grp)
    k = x
    mult = []
    while k not in grp:
        mult.append(k)
        k = form.add(k, x)
    for g in grp:
        for m in mult:
            out.add(form.add(g, m))
    # closure (grp is a group and x acts by translation)
    changed = True
    while changed:
        changed = False
        for a in list(out):
            b = form.add(a, x)
            if b not in out:
                out.add(b)
                changed = True
    return frozenset(out)


def _group_generators(form: FiniteQuadraticForm, grp: frozenset) -> list[tuple]:
    zero = form.reduce([0] * len(form.orders))
    gens: list[tuple] = []
    span = frozenset([zero])
    for e in sorted(grp):
        if e not in span:
            gens.append(e)
            span = _span(form, span, e)
    return gens


def even_overlattices(base: Lattice, index: int) -> list[Overlattice]:
    """All even overlattices of the given index, one per isotropic subgroup."""
    dmap = DiscriminantMap(base)
    form = dmap.form
    out = []
    keys = set()
    for grp in isotropic_subgroups(form, index):
        gens = _group_generators(form, grp)
        spec = GlueSpec(base, [dmap.lift(g) for g in gens])
        over = extend(spec)
        key = tuple(tuple(r) for r in over.basis)
        if key not in keys:
            keys.add(key)
            out.append(over)
    return out


def isometric_to_type(lat: Lattice, kind: str) -> bool:
    """Rank, determinant and root-system test against a Dynkin type name."""
    k, n = kind[0], int(kind[1:])
    target = root_lattice(k, n)
    if lat.rank != n or abs(lat.det()) != abs(target.det()):
        return False
    rep = roots(lat)
    return rep.components == [kind.upper()]


# -- gluing along anti-isometries ------------------------------------------------------

def glue_anti_isometry(s: Lattice, t: Lattice, phi: Sequence[Sequence[int]],
                       s_gens: Sequence[Sequence] | None = None,
                       t_gens: Sequence[Sequence] | None = None) -> Overlattice:
    """Overlattice of S + T glued along the graph of phi: G_T -> G_S.

    Column j of ``phi`` gives the image of ``t_gens[j]`` as a combination of
    ``s_gens``.  Both generator lists default to the invariant-factor
    generators of the discriminant groups.
    """
    qs = discriminant_group(s)
    qt = discriminant_group(t)
    s_gens = [list(map(Q, g)) for g in (s_gens if s_gens is not None else qs.generators)]
    t_gens = [list(map(Q, g)) for g in (t_gens if t_gens is not None else qt.generators)]
    if len(phi) != len(s_gens) or (phi and len(phi[0]) != len(t_gens)):
        raise LatticeError("witness matrix has the wrong shape")
    glue = []
    for j, tg in enumerate(t_gens):
        img = [sum((phi[i][j] * s_gens[i][r] for i in range(len(s_gens))), Fraction(0))
               for r in range(s.rank)]
        glue.append(img + tg)
    base = direct_sum(s, t)
    try:
        over = extend(GlueSpec(base, glue))
    except LatticeError as exc:
        raise LatticeError(f"witness is not an anti-isometry: {exc}") from exc
    if over.index != qt.order or qs.order != qt.order:
        raise LatticeError("witness is not bijective on discriminant groups")
    return over


def anti_isometry_report(s: Lattice, t: Lattice, phi: Sequence[Sequence[int]],
                         s_gens: Sequence[Sequence], t_gens: Sequence[Sequence]) -> dict:
    """Check q_S(phi(g)) = -q_T(g) on generators, then glue S + T along phi."""
    images = []
    for j in range(len(t_gens)):
        images.append([sum((phi[i][j] * Q(s_gens[i][r]) for i in range(len(s_gens))), Fraction(0))
                       for r in range(s.rank)])
    form_ok = True
    for j, gj in enumerate(t_gens):
        if (s.norm(images[j]) + t.norm(gj)) % 2 != 0:
            form_ok = False
        for k in range(j):
            if (s.pair(images[j], images[k]) + t.pair(gj, t_gens[k])) % 1 != 0:
                form_ok = False
    out = {"anti_isometry": form_ok, "index": None, "det": None, "even": None,
           "signature": None, "pass": False}
    if not form_ok:
        return out
    try:
        over = glue_anti_isometry(s, t, phi, s_gens, t_gens)
    except LatticeError as exc:
        out["error"] = str(exc)
        return out
    lat = over.lattice
    out.update({"index": over.index, "det": lat.det(), "even": lat.is_even(),
                "signature": list(lat.signature())})
    out["pass"] = abs(lat.det()) == 1 and lat.is_even() and lat.signature() == (3, 19)
    return out


# -- fibre root classes ------------------------------------------------------------------

def fiber_root_classes(lat: Lattice, fiber: Sequence[int], perturb: Sequence[int] | None = None) -> RootSystemReport:
    """Root system of F^perp / Z F for a primitive isotropic vector F."""
    f = [int(x) for x in fiber]
    if lat.norm(f) != 0:
        raise LatticeError("fibre class is not isotropic")
    if not mx.is_primitive_sublattice([f]):
        raise LatticeError("fibre class is not primitive")
    perp = lat.orthogonal_complement([f])
    # coordinates of F in the basis of F^perp, completed to a unimodular basis
    sol = mx.solve(mx.transpose(perp), [Fraction(c) for c in f])
    if sol is None or any(c.denominator != 1 for c in sol):
        raise LatticeError("fibre class is not in its own orthogonal complement")
    fcoords = [int(c) for c in sol]
    completed = mx.extend_to_unimodular([fcoords])
    lifts = []
    for k, row in enumerate(completed[1:]):
        vec = [sum(row[i] * perp[i][r] for i in range(len(perp))) for r in range(lat.rank)]
        if perturb is not None:
            vec = [a + perturb[k % len(perturb)] * b for a, b in zip(vec, f)]
        lifts.append(vec)
    quotient = lat.sublattice(lifts)
    return roots(quotient)


# -- case analysis for root extensions ------------------------------------------------------

def _set_partitions(items: list) -> Iterable[list[list]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


def _ade_candidates(rank: int) -> list[tuple[str, int]]:
    out = [(f"A{rank}", rank + 1)]
    if rank >= 4:
        out.append((f"D{rank}", 4))
    if rank in (6, 7, 8):
        out.append((f"E{rank}", {6: 3, 7: 2, 8: 1}[rank]))
    return out


def root_extension_case_analysis(summands: Sequence[int | str], target_index: int | None = None,
                                 root_search: bool = True) -> dict:
    """Finite-index embeddings of a sum of A-type lattices into ADE root lattices.

    Every grouping of the summands is matched against ADE types of the
    same rank whose determinant satisfies |det group| = n_i^2 |det target|.
    Groupings with total index 1 are the trivial case and are skipped.
    Each nontrivial group extension is then tested by enumerating all even
    overlattices of that index and comparing their root systems.
    """
    ms = []
    for s in summands:
        if isinstance(s, str):
            kind, n = s[0].upper(), int(s[1:])
            if kind != "A":
                raise ValueError("case analysis expects type-A summands")
            ms.append(n)
        else:
            ms.append(int(s))
    if not ms:
        raise ValueError("no summands")
    cases = []
    seen = set()
    for part in _set_partitions(list(range(len(ms)))):
        options = []
        for group in part:
            rk = sum(ms[i] for i in group)
            det = 1
            for i in group:
                det *= ms[i] + 1
            opts = []
            for name, tdet in _ade_candidates(rk):
                if det % tdet:
                    continue
                sq = det // tdet
                n_i = isqrt(sq)
                if n_i * n_i != sq:
                    continue
                if n_i == 1 and len(group) > 1:
                    continue
                if n_i == 1 and name != f"A{rk}":
                    continue
                opts.append((name, n_i))
            if not opts:
                break
            options.append(opts)
        else:
            for choice in itertools.product(*options):
                total = 1
                for _, n_i in choice:
                    total *= n_i
                if total == 1 or (target_index is not None and total != target_index):
                    continue
                groups = []
                for group, (name, n_i) in zip(part, choice):
                    groups.append((tuple(sorted(ms[i] for i in group)), name, n_i))
                key = tuple(sorted(groups))
                if key in seen:
                    continue
                seen.add(key)
                cases.append({"groups": sorted(groups), "index": total})
    for case in cases:
        details = []
        realized = True
        for sub, name, n_i in case["groups"]:
            entry = {"summands": [f"A{m}" for m in sub], "target": name, "index": n_i}
            if n_i > 1 and root_search:
                base = lattice_of_types([f"A{m}" for m in sub])
                overs = even_overlattices(base, n_i)
                types = sorted({"+".join(roots(o.lattice).components) for o in overs})
                hit = any(isometric_to_type(o.lattice, name) for o in overs)
                entry.update({"overlattices": len(overs), "root_types": types, "realized": hit})
                realized &= hit
            details.append(entry)
        case["extensions"] = details
        case["realized"] = realized if root_search else None
        case["label"] = " + ".join(
            (f"({'+'.join(e['summands'])} in {e['target']}, index {e['index']})" if e["index"] > 1
             else e["target"]) for e in details)
    cases.sort(key=lambda c: c["label"])
    return {"summands": [f"A{m}" for m in ms], "target_index": target_index, "cases": cases}


# -- the two explicit glue constructions --------------------------------------------------

def gamma35() -> Lattice:
    """U + A1 + A1 + A5 + A11 with basis O, F, G, H, J1..J5, theta1..theta11."""
    u = Lattice([[-2, 1], [1, 0]], ["O", "F"])
    lat = direct_sum(u, root_lattice("A", 1, "G"), root_lattice("A", 1, "H"),
                     root_lattice("A", 5, "J"), root_lattice("A", 11, "theta"))
    return Lattice(lat.gram, ["O", "F", "G", "H"] + [f"J{i}" for i in range(1, 6)]
                   + [f"theta{i}" for i in range(1, 12)])


def gamma53() -> Lattice:
    """U + A2 + A2 + A3 + A11 with basis O, F, G1, G2, H1, H2, J1..J3, theta1..theta11."""
    u = Lattice([[-2, 1], [1, 0]], ["O", "F"])
    return direct_sum(u, root_lattice("A", 2, "G"), root_lattice("A", 2, "H"),
                      root_lattice("A", 3, "J"), root_lattice("A", 11, "theta"))


def _lab(lat: Lattice, coeffs: dict) -> list[Fraction]:
    v = [Fraction(0)] * lat.rank
    for k, c in coeffs.items():
        v[lat.index_of(k)] += Q(c)
    return v


def s35_vector(lat: Lattice | None = None) -> list[Fraction]:
    lat = lat or gamma35()
    co: dict = {"O": 1, "F": 2, "G": Fraction(-1, 2), "H": Fraction(-1, 2)}
    for i in range(1, 12):
        w = i if i <= 6 else 12 - i
        co[f"theta{i}"] = Fraction(-w, 2)
    return _lab(lat, co)


def s53_vector(lat: Lattice | None = None, sign: int = 1) -> list[Fraction]:
    """Glue vector for the index-3 extension of Gamma53.

    ``sign=+1`` gives the vector whose pairings are the stated ones;
    ``sign=-1`` reproduces the tail term with the opposite sign.
    """
    lat = lat or gamma53()
    co: dict = {"O": 1, "F": 2, "G1": Fraction(-2, 3), "G2": Fraction(-1, 3),
                "H1": Fraction(-2, 3), "H2": Fraction(-1, 3)}
    for i in range(1, 12):
        c = Fraction(-2 * i, 3)
        if i >= 5:
            c += sign * (i - 4)
        co[f"theta{i}"] = c
    return _lab(lat, co)


S35_PAIRINGS = ([("self", -2), ("F", 1), ("G", 1), ("H", 1), ("theta6", 1), ("O", 0)]
                + [(f"J{i}", 0) for i in range(1, 6)]
                + [(f"theta{j}", 0) for j in range(1, 12) if j != 6])

S53_PAIRINGS = ([("self", -2), ("F", 1), ("G1", 1), ("H1", 1), ("theta4", 1), ("O", 0),
                 ("G2", 0), ("H2", 0)]
                + [(f"J{i}", 0) for i in range(1, 4)]
                + [(f"theta{j}", 0) for j in range(1, 12) if j != 4])


def s35() -> Overlattice:
    g = gamma35()
    return extend(GlueSpec(g, [s35_vector(g)]))


def s53() -> Overlattice:
    g = gamma53()
    return extend(GlueSpec(g, [s53_vector(g)]))


def a_generator(lat: Lattice, prefix: str, n: int) -> list[Fraction]:
    """(1/(n+1)) sum i e_i on an A_n summand whose basis labels are prefix1..prefixn."""
    return _lab(lat, {f"{prefix}{i}": Fraction(i, n + 1) for i in range(1, n + 1)})


def s35_epsilons(lat: Lattice | None = None) -> list[list[Fraction]]:
    """Generators of the discriminant group of S35 (in Gamma35 coordinates)."""
    lat = lat or gamma35()
    h1 = _lab(lat, {"G": Fraction(1, 2)})
    h3 = _lab(lat, {f"J{i}": Fraction(i, 6) for i in range(1, 6)})
    h4 = _lab(lat, {f"theta{i}": Fraction(i, 12) for i in range(1, 12)})
    return [h3, [a - b for a, b in zip(h1, h4)]]


def s53_epsilons(lat: Lattice | None = None) -> list[list[Fraction]]:
    lat = lat or gamma53()
    h1 = _lab(lat, {"G1": Fraction(1, 3), "G2": Fraction(2, 3)})
    h3 = _lab(lat, {f"J{i}": Fraction(i, 4) for i in range(1, 4)})
    h4 = _lab(lat, {f"theta{i}": Fraction(i, 12) for i in range(1, 12)})
    return [h3, [a - b for a, b in zip(h1, h4)]]


def s35_e6_presentation() -> tuple[Lattice, list[int]]:
    """U + A1 + A11 + E6 together with the isotropic class F of its U."""
    u = Lattice([[-2, 1], [1, 0]], ["O", "F"])
    lat = direct_sum(u, root_lattice("A", 1, "a1_"), root_lattice("A", 11, "a11_"),
                     root_lattice("E", 6, "e6_"))
    return lat, lat.basis_vector("F")



"""Semi-stable fibre configurations and torsion sections via the component map."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod
from typing import Iterable, Sequence

from .lattice import Lattice, direct_sum, discriminant_group, hyperbolic_plane, root_lattice


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class FiberConfig:
    """Orders n_i of the I_n fibres.

    Catalogue configurations are ascending; intermediate configurations in
    quotient chains keep the fibre order they inherit (``ordered=False``).
    """

    n: tuple

    def __init__(self, n: Iterable[int], ordered: bool = True):
        vals = tuple(int(x) for x in n)
        if len(vals) != 6 or any(x < 1 for x in vals):
            raise ConfigError(f"expected six positive fibre orders, got {vals}")
        if sum(vals) != 24:
            raise ConfigError(f"fibre orders {vals} do not sum to 24")
        if ordered and list(vals) != sorted(vals):
            raise ConfigError(f"configuration {vals} is not ascending")
        object.__setattr__(self, "n", vals)

    def sorted(self) -> "FiberConfig":
        return FiberConfig(sorted(self.n))

    def __iter__(self):
        return iter(self.n)

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.n)) + "]"

    def group_order(self) -> int:
        return prod(self.n)

    def reduce(self, s: Sequence[int]) -> tuple[int, ...]:
        if len(s) != 6:
            raise ConfigError("section tuple must have six entries")
        return tuple(int(a) % n for a, n in zip(s, self.n))

    def add(self, s: Sequence[int], t: Sequence[int]) -> tuple[int, ...]:
        return tuple((a + b) % n for a, b, n in zip(s, t, self.n))

    def scale(self, k: int, s: Sequence[int]) -> tuple[int, ...]:
        return tuple((k * a) % n for a, n in zip(s, self.n))

    def order_of(self, s: Sequence[int]) -> int:
        k = 1
        for a, n in zip(self.reduce(s), self.n):
            o = n // gcd(a, n)
            k = k * o // gcd(k, o)
        return k

    def elements(self) -> Iterable[tuple[int, ...]]:
        return itertools.product(*(range(n) for n in self.n))


def config(n: Iterable[int] | FiberConfig | str, ordered: bool = True) -> FiberConfig:
    if isinstance(n, FiberConfig):
        return n
    if isinstance(n, str):
        n = [int(x) for x in n.replace("[", "").replace("]", "").split(",") if x.strip()]
    return FiberConfig(n, ordered=ordered)


def contribution(c: FiberConfig, s: Sequence[int]) -> Fraction:
    """Sum of the local height corrections a(n - a)/n."""
    return sum((Fraction(a * (n - a), n) for a, n in zip(c.reduce(s), c.n)), Fraction(0))


def is_torsion_candidate(c: FiberConfig, s: Sequence[int]) -> bool:
    r = c.reduce(s)
    return any(r) and contribution(c, r) == 4


def torsion_candidates(c: FiberConfig) -> list[tuple[int, ...]]:
    return [s for s in c.elements() if is_torsion_candidate(c, s)]


# -- relabelling ------------------------------------------------------------------------

def _relabellings(c: FiberConfig) -> list[tuple[tuple[int, ...], tuple[bool, ...]]]:
    """Permutations preserving the n_i together with all orientation flips."""
    perms = [p for p in itertools.permutations(range(6)) if all(c.n[p[i]] == c.n[i] for i in range(6))]
    flippable = [i for i, n in enumerate(c.n) if n > 2]
    flips = []
    for bits in itertools.product((False, True), repeat=len(flippable)):
        f = [False] * 6
        for i, b in zip(flippable, bits):
            f[i] = b
        flips.append(tuple(f))
    return [(p, f) for p in perms for f in flips]


def _relabelling_generators(c: FiberConfig) -> list[tuple[tuple[int, ...], tuple[bool, ...]]]:
    """Single flips and transpositions of fibres with equal order."""
    ident = tuple(range(6))
    noflip = (False,) * 6
    out = []
    for i, n in enumerate(c.n):
        if n > 2:
            out.append((ident, tuple(j == i for j in range(6))))
        for j in range(i + 1, 6):
            if c.n[j] == n:
                p = list(ident)
                p[i], p[j] = j, i
                out.append((tuple(p), noflip))
    return out


def _apply(c: FiberConfig, s: Sequence[int], perm: tuple[int, ...], flip: tuple[bool, ...]) -> tuple[int, ...]:
    out = [0] * 6
    for i in range(6):
        a = s[perm[i]]
        n = c.n[i]
        out[i] = (n - a) % n if flip[i] else a
    return tuple(out)


def relabel_normalize(c: FiberConfig, s: Sequence[int]) -> tuple[int, ...]:
    """Lexicographically least image under flips and equal-order permutations."""
    r = c.reduce(s)
    return min(_apply(c, r, p, f) for p, f in _relabellings(c))


def same_up_to_relabelling(c: FiberConfig, s: Sequence[int], t: Sequence[int]) -> bool:
    return relabel_normalize(c, s) == relabel_normalize(c, t)


# -- torsion groups ---------------------------------------------------------------------

@dataclass(frozen=True)
class TorsionGroup:
    config: FiberConfig
    elements: frozenset
    generators: tuple

    @property
    def order(self) -> int:
        return len(self.elements)

    def invariant_factors(self) -> list[int]:
        return invariant_factors(self.config, self.elements)

    @property
    def name(self) -> str:
        return group_name(self.invariant_factors())

    def to_json(self) -> dict:
        return {"group": self.name, "order": self.order,
                "generators": [list(g) for g in self.generators]}


def group_name(factors: Sequence[int]) -> str:
    fs = [f for f in factors if f > 1]
    if not fs:
        return "(0)"
    return " x ".join(f"Z/{f}" for f in fs)


def invariant_factors(c: FiberConfig, elems: Iterable[tuple[int, ...]]) -> list[int]:
    """Invariant factors of a finite subgroup from its element-order statistics."""
    elems = list(elems)
    n = len(elems)
    if n == 1:
        return []
    primes = [p for p in range(2, n + 1) if n % p == 0 and all(p % q for q in range(2, p))]
    parts: dict[int, list[int]] = {}
    for p in primes:
        # |G[p^j]| = p^(sum_i min(j, e_i)) determines the exponents e_i
        counts = []
        j = 1
        while True:
            k = sum(1 for e in elems if c.scale(p ** j, e) == c.reduce([0] * 6))
            counts.append(k)
            if j > 1 and counts[-1] == counts[-2]:
                break
            j += 1
        logs = [0]
        for k in counts:
            e = 0
            while k > 1:
                k //= p
                e += 1
            logs.append(e)
        # number of cyclic factors of exponent >= j is logs[j] - logs[j-1]
        exps = []
        for j in range(1, len(logs)):
            ge_j = logs[j] - logs[j - 1]
            ge_next = (logs[j + 1] - logs[j]) if j + 1 < len(logs) else 0
            exps.extend([j] * (ge_j - ge_next))
        parts[p] = sorted(exps, reverse=True)
    width = max((len(v) for v in parts.values()), default=0)
    factors = [1] * width
    for p, exps in parts.items():
        for i, e in enumerate(exps):
            factors[i] *= p ** e
    return sorted(factors)


def _closure(c: FiberConfig, gens: Sequence[tuple[int, ...]]) -> frozenset:
    zero = c.reduce([0] * 6)
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = c.add(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def _minimal_generators(c: FiberConfig, elems: frozenset) -> tuple:
    zero = c.reduce([0] * 6)
    gens: list[tuple[int, ...]] = []
    span = frozenset([zero])
    for e in sorted(elems, key=lambda x: (-c.order_of(x), x)):
        if e not in span:
            gens.append(e)
            span = _closure(c, gens)
        if span == elems:
            break
    return tuple(gens)


def _join(c: FiberConfig, g: frozenset, s: tuple[int, ...]) -> frozenset:
    """The subgroup g + <s>."""
    mults = [s]
    while mults[-1] not in g:
        mults.append(c.add(mults[-1], s))
    return frozenset(c.add(x, m) for x in g for m in mults)


def _orbit(c: FiberConfig, g: frozenset, moves: Sequence) -> set[frozenset]:
    orbit = {g}
    todo = [g]
    while todo:
        h = todo.pop()
        for p, f in moves:
            k = frozenset(_apply(c, e, p, f) for e in h)
            if k not in orbit:
                orbit.add(k)
                todo.append(k)
    return orbit


def canonical_subgroup(c: FiberConfig, elems: frozenset) -> frozenset:
    """Representative of the relabelling orbit of a subgroup."""
    return min(_orbit(c, frozenset(elems), _relabelling_generators(c)), key=lambda x: sorted(x))


def generated_group(c: FiberConfig, gens: Sequence[Sequence[int]]) -> TorsionGroup:
    gs = [c.reduce(g) for g in gens]
    elems = _closure(c, gs)
    return TorsionGroup(c, elems, tuple(gs))


def enumerate_torsion_groups(c: FiberConfig, up_to_relabelling: bool = True) -> list[TorsionGroup]:
    """All subgroups whose nonzero elements are torsion candidates."""
    cands = set(torsion_candidates(c))
    zero = c.reduce([0] * 6)
    trivial = frozenset([zero])
    # elements all of whose nonzero multiples are candidates
    cyclic_ok = [s for s in sorted(cands) if _join(c, trivial, s) <= cands | trivial]
    ok = cands | trivial
    groups = {trivial}
    frontier = [(trivial, cyclic_ok)]
    while frontier:
        nxt = []
        for g, ext in frontier:
            for s in ext:
                if s in g:
                    continue
                h = _join(c, g, s)
                if h in groups or not h <= ok:
                    continue
                groups.add(h)
                # only elements that stay admissible when added to h
                h_ext = [t for t in ext if t not in h and all(c.add(x, t) in ok for x in h)]
                nxt.append((h, h_ext))
        frontier = nxt
    if up_to_relabelling:
        moves = _relabelling_generators(c)
        reps = []
        covered: set[frozenset] = set()
        for g in sorted(groups, key=lambda x: (len(x), sorted(x))):
            if g in covered:
                continue
            orbit = _orbit(c, g, moves)
            covered |= orbit
            reps.append(min(orbit, key=lambda x: sorted(x)))
        groups = set(reps)
    out = [TorsionGroup(c, g, _minimal_generators(c, g)) for g in groups]
    out.sort(key=lambda t: (t.order, sorted(t.generators)))
    return out


def groups_by_name(groups: Iterable[TorsionGroup]) -> dict[str, list[TorsionGroup]]:
    out: dict[str, list[TorsionGroup]] = {}
    for g in groups:
        out.setdefault(g.name, []).append(g)
    return out


# -- quotients and covers ---------------------------------------------------------------

def _prime(p: int) -> bool:
    return p > 1 and all(p % q for q in range(2, int(p ** 0.5) + 1))


def quotient_config_ordered(c: FiberConfig, s: Sequence[int]) -> FiberConfig:
    """Fibre orders after dividing by a section of prime order, in input order.

    A fibre met at the identity component becomes I_{pn}; otherwise I_{n/p}.
    The same rule describes the cyclic cover attached to a section on the
    quotient.
    """
    r = c.reduce(s)
    p = c.order_of(r)
    if not _prime(p):
        raise ConfigError(f"section {r} has order {p}, which is not prime")
    out = []
    for a, n in zip(r, c.n):
        if a == 0:
            out.append(p * n)
        else:
            if n % p or n // gcd(a, n) != p:
                raise ConfigError(f"component {a} of I_{n} does not have order {p}")
            out.append(n // p)
    if sum(out) != 24:
        raise ConfigError(f"quotient fibre orders {out} do not sum to 24")
    return FiberConfig(out, ordered=False)


def quotient_config(c: FiberConfig, s: Sequence[int]) -> FiberConfig:
    return quotient_config_ordered(c, s).sorted()


def shioda_tate_det(c: FiberConfig, mw_order: int) -> Fraction:
    """|det NS| = prod n_i / |MW|^2 for a fibration with finite Mordell-Weil group."""
    if mw_order < 1:
        raise ConfigError("Mordell-Weil order must be positive")
    return Fraction(c.group_order(), mw_order * mw_order)


def trivial_mw_picard(c: FiberConfig) -> Lattice:
    """U plus the A_{n-1} summands for n > 1."""
    u = hyperbolic_plane(("O", "F"))
    parts = [u] + [root_lattice("A", n - 1, f"f{i + 1}_") for i, n in enumerate(c.n) if n > 1]
    return direct_sum(*parts)


def trivial_mw_report(c: FiberConfig) -> dict:
    lat = trivial_mw_picard(c)
    disc = discriminant_group(lat)
    expected = sorted(n for n in c.n if n > 1)
    # each A_{n-1} contributes a cyclic summand of order n with q = -(n-1)/n
    q_ok = True
    for i, n in enumerate(c.n):
        if n == 1:
            continue
        start = 2 + sum(m - 1 for m in c.n[:i] if m > 1)
        h = [Fraction(0)] * lat.rank
        for k in range(1, n):
            h[start + k - 1] = Fraction(k, n)
        if (lat.norm(h) + Fraction(n - 1, n)) % 2 != 0:
            q_ok = False
    return {"det": lat.det(), "rank": lat.rank, "signature": list(lat.signature()),
            "summand_orders": expected, "q_matches": q_ok,
            "pass": lat.rank == 20 and q_ok and abs(lat.det()) == c.group_order()}


# -- the classification table -------------------------------------------------------------

def theorem_table_check(rows: Sequence[dict]) -> list[dict]:
    """Per row: each listed group occurs among the candidates.

    Rows are {"m", "config", "groups": [[name, [generator tuples]], ...]};
    stated generators must generate a subgroup of that name whose
    relabelling class is a candidate.
    """
    out = []
    for row in rows:
        try:
            c = config(row["config"])
            listed = [(g[0], g[1] if len(g) > 1 else []) for g in row["groups"]]
        except (KeyError, TypeError, IndexError) as exc:
            raise ConfigError(f"malformed table row {row!r}") from exc
        cands = enumerate_torsion_groups(c)
        by_name = groups_by_name(cands)
        keys = {g.elements for g in cands}
        checks = []
        for name, gens in listed:
            ok = name in by_name
            info: dict = {"group": name, "candidate": ok}
            if gens:
                gg = generated_group(c, gens)
                info["generated"] = gg.name
                info["generators_match"] = gg.name == name and canonical_subgroup(c, gg.elements) in keys
                ok = ok and info["generators_match"]
            info["pass"] = ok
            checks.append(info)
        out.append({"m": row.get("m"), "config": list(c.n),
                    "candidates": sorted(by_name), "listed": checks,
                    "pass": all(ch["pass"] for ch in checks)})
    return out

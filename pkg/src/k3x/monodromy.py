"""Branch-cycle triples for covers of the line branched over three points."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, gcd
from typing import Iterable, Sequence

MAX_DEGREE = 8

Perm = tuple


def compose(p: Perm, q: Perm) -> Perm:
    """(p o q)(i) = p(q(i))."""
    return tuple(p[i] for i in q)


def inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def identity(d: int) -> Perm:
    return tuple(range(d))


def cycle_type(p: Perm) -> tuple[int, ...]:
    seen = [False] * len(p)
    parts = []
    for i in range(len(p)):
        if not seen[i]:
            k = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = p[j]
                k += 1
            parts.append(k)
    return tuple(sorted(parts, reverse=True))


def perm_order(p: Perm) -> int:
    k = 1
    for c in cycle_type(p):
        k = k * c // gcd(k, c)
    return k


def sign(p: Perm) -> int:
    return -1 if sum(c - 1 for c in cycle_type(p)) % 2 else 1


def normalize_type(parts: Iterable[int]) -> tuple[int, ...]:
    t = tuple(sorted((int(x) for x in parts), reverse=True))
    if any(x < 1 for x in t):
        raise ValueError("cycle type parts must be positive")
    return t


def parse_cycles(text: str) -> list[tuple[int, ...]]:
    """Parse ``"2,2;3,1;3,1"`` into three cycle types."""
    groups = [g for g in text.split(";")]
    if len(groups) != 3:
        raise ValueError("expected three cycle types separated by ';'")
    return [normalize_type(int(x) for x in g.split(",") if x.strip()) for g in groups]


def perm_with_type(t: Sequence[int]) -> Perm:
    out = []
    start = 0
    for c in t:
        out.extend(list(range(start + 1, start + c)) + [start])
        start += c
    return tuple(out)


def is_transitive(gens: Sequence[Perm]) -> bool:
    d = len(gens[0])
    seen = {0}
    todo = [0]
    while todo:
        i = todo.pop()
        for g in gens:
            if g[i] not in seen:
                seen.add(g[i])
                todo.append(g[i])
    return len(seen) == d


@dataclass(frozen=True)
class PermutationTriple:
    s0: Perm
    s1: Perm
    sinf: Perm

    @property
    def degree(self) -> int:
        return len(self.s0)

    def is_valid(self) -> bool:
        prod = compose(compose(self.s0, self.s1), self.sinf)
        return prod == identity(self.degree) and is_transitive([self.s0, self.s1])

    def types(self) -> tuple:
        return cycle_type(self.s0), cycle_type(self.s1), cycle_type(self.sinf)

    def to_json(self) -> dict:
        return {"sigma0": list(self.s0), "sigma1": list(self.s1), "sigma_inf": list(self.sinf),
                "types": [list(t) for t in self.types()]}


def _conjugate(c: Perm, p: Perm) -> Perm:
    return compose(compose(c, p), inverse(c))


def triples_with_types(t0: Sequence[int], t1: Sequence[int], tinf: Sequence[int],
                       d: int) -> list[PermutationTriple]:
    """Transitive triples with product identity, one per simultaneous conjugacy class."""
    t0, t1, tinf = normalize_type(t0), normalize_type(t1), normalize_type(tinf)
    for t in (t0, t1, tinf):
        if sum(t) != d:
            raise ValueError(f"cycle type {t} is not a partition of {d}")
    if d > MAX_DEGREE:
        raise ValueError(f"degree {d} exceeds the enumeration cap {MAX_DEGREE}")
    s0 = perm_with_type(t0)
    allp = list(itertools.permutations(range(d)))
    centralizer = [c for c in allp if _conjugate(c, s0) == s0]
    found = {}
    for s1 in allp:
        if cycle_type(s1) != t1:
            continue
        sinf = inverse(compose(s0, s1))
        if cycle_type(sinf) != tinf or not is_transitive([s0, s1]):
            continue
        key = min(_conjugate(c, s1) for c in centralizer)
        if key not in found:
            found[key] = PermutationTriple(s0, key, inverse(compose(s0, key)))
    return [found[k] for k in sorted(found)]


# -- the monodromy group ---------------------------------------------------------------

def closure(gens: Sequence[Perm]) -> set[Perm]:
    d = len(gens[0])
    e = identity(d)
    group = {e}
    todo = [e]
    while todo:
        x = todo.pop()
        for g in gens:
            y = compose(x, g)
            if y not in group:
                group.add(y)
                todo.append(y)
    return group


@dataclass
class GroupInfo:
    order: int
    abelian: bool
    has_odd: bool
    label: str
    element_orders: dict

    def to_json(self) -> dict:
        return {"order": self.order, "abelian": self.abelian, "contains_odd": self.has_odd,
                "label": self.label,
                "element_orders": {str(k): v for k, v in sorted(self.element_orders.items())}}


def _identify(group: set[Perm]) -> tuple[bool, str]:
    n = len(group)
    elems = list(group)
    abelian = all(compose(a, b) == compose(b, a) for a in elems for b in elems)
    orders = [perm_order(g) for g in elems]
    if n == 1:
        return abelian, "1"
    if max(orders) == n:
        return abelian, f"Z/{n}"
    if abelian:
        return abelian, f"abelian of order {n}"
    # dihedral: an element r of order n/2 and an involution s outside <r> with s r s = r^-1
    half = n // 2
    if n % 2 == 0:
        for r in elems:
            if perm_order(r) != half:
                continue
            powers = closure([r])
            for s in elems:
                if s not in powers and perm_order(s) == 2 and \
                        compose(compose(s, r), s) == inverse(r):
                    return abelian, f"D{n}"
    counts = sorted(set(orders))
    if n == 12 and counts == [1, 2, 3]:
        return abelian, "A4"
    if n == 24 and counts == [1, 2, 3, 4] and orders.count(2) == 9:
        return abelian, "S4"
    return abelian, f"order {n}"


def group_of(t: PermutationTriple | Sequence[Perm]) -> GroupInfo:
    gens = [t.s0, t.s1] if isinstance(t, PermutationTriple) else list(t)
    if len(gens[0]) > 12:
        raise ValueError("degree too large for closure")
    g = closure(gens)
    abelian, label = _identify(g)
    stats: dict[int, int] = {}
    for x in g:
        stats[perm_order(x)] = stats.get(perm_order(x), 0) + 1
    info = GroupInfo(len(g), abelian, any(sign(x) < 0 for x in g), label, stats)
    assert factorial(len(gens[0])) % info.order == 0
    return info


def riemann_hurwitz_genus(d: int, profiles: Sequence[Sequence[int]]) -> int | None:
    """Genus of a connected degree-d cover with the given ramification, or None."""
    total = -2 * d
    for prof in profiles:
        if sum(prof) != d:
            raise ValueError(f"profile {tuple(prof)} is not a partition of {d}")
        total += sum(e - 1 for e in prof)
    if total % 2:
        raise ValueError("ramification data fails the parity condition")
    g = total // 2 + 1
    return g if g >= 0 else None


def galois_closure_genus(t: PermutationTriple) -> int:
    n = group_of(t).order
    chi = Fraction(-2) + sum(Fraction(1) - Fraction(1, perm_order(s)) for s in (t.s0, t.s1, t.sinf))
    val = n * chi
    if val.denominator != 1 or val.numerator % 2:
        raise ArithmeticError("non-integral Euler characteristic")
    return int(val) // 2 + 1


def branch_orders(t: PermutationTriple) -> tuple[int, int, int]:
    return perm_order(t.s0), perm_order(t.s1), perm_order(t.sinf)

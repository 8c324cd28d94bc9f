"""Integral lattices, discriminant groups and finite quadratic forms."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterator, Sequence

from . import matrix as mx
from .rational import Q, mod1, mod2, qstr


class LatticeError(ValueError):
    pass


@dataclass(frozen=True)
class Lattice:
    gram: tuple
    labels: tuple = ()

    def __init__(self, gram: Sequence[Sequence[int]], labels: Sequence[str] | None = None):
        g = tuple(tuple(int(x) for x in row) for row in gram)
        if not mx.is_symmetric(g):
            raise LatticeError("Gram matrix must be square and symmetric")
        n = len(g)
        labs = tuple(labels) if labels else tuple(f"e{i + 1}" for i in range(n))
        if len(labs) != n:
            raise LatticeError("label count does not match rank")
        object.__setattr__(self, "gram", g)
        object.__setattr__(self, "labels", labs)

    @property
    def rank(self) -> int:
        return len(self.gram)

    def det(self) -> int:
        return mx.det_bareiss(self.gram)

    def is_nondegenerate(self) -> bool:
        return self.rank == 0 or self.det() != 0

    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def pair(self, x: Sequence, y: Sequence) -> Fraction:
        return Fraction(mx.bilinear(x, self.gram, y))

    def norm(self, x: Sequence) -> Fraction:
        return self.pair(x, x)

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise LatticeError(f"unknown label {label!r}") from None

    def basis_vector(self, label: str | int) -> list[int]:
        i = label if isinstance(label, int) else self.index_of(label)
        return [int(j == i) for j in range(self.rank)]

    def signature(self) -> tuple[int, int]:
        return signature(self.gram)

    def dual_basis(self) -> list[list[Fraction]]:
        """Dual basis vectors (columns of the inverse Gram) in lattice coordinates."""
        inv = mx.inverse(self.gram)
        return [[inv[i][j] for i in range(self.rank)] for j in range(self.rank)]

    def is_dual_vector(self, x: Sequence) -> bool:
        return all(Fraction(v).denominator == 1 for v in mx.mat_vec(self.gram, [Q(c) for c in x]))

    def sublattice(self, rows: Sequence[Sequence[int]], labels: Sequence[str] | None = None) -> "Lattice":
        b = [list(r) for r in rows]
        g = mx.mat_mul(mx.mat_mul(b, self.gram), mx.transpose(b))
        return Lattice(g, labels)

    def orthogonal_complement(self, rows: Sequence[Sequence[int]]) -> list[list[int]]:
        """Z-basis (lattice coordinates) of the vectors orthogonal to ``rows``."""
        if not rows:
            return mx.identity(self.rank)
        a = mx.mat_mul([list(r) for r in rows], self.gram)
        return mx.integer_kernel(a)

    def scaled(self, k: int) -> "Lattice":
        return Lattice([[k * x for x in r] for r in self.gram], self.labels)

    def to_json(self) -> dict:
        return {"gram": [list(r) for r in self.gram], "labels": list(self.labels)}

    @classmethod
    def from_json(cls, obj: dict) -> "Lattice":
        return cls(obj["gram"], obj.get("labels"))

    def __add__(self, other: "Lattice") -> "Lattice":
        return direct_sum(self, other)


def direct_sum(*lats: Lattice) -> Lattice:
    labels: list[str] = []
    for lat in lats:
        labels.extend(lat.labels)
    if len(set(labels)) != len(labels):
        labels = [f"e{i + 1}" for i in range(len(labels))]
    return Lattice(mx.block_diag(*[lat.gram for lat in lats]), labels)


def determinant(lat: Lattice) -> int:
    return lat.det()


def signature(gram: Sequence[Sequence]) -> tuple[int, int]:
    """(positive, negative) inertia by exact symmetric pivoting."""
    a = [[Fraction(x) for x in r] for r in gram]
    pos = neg = 0
    while a:
        n = len(a)
        piv = next((i for i in range(n) if a[i][i] != 0), None)
        if piv is None:
            off = next(((i, j) for i in range(n) for j in range(n) if a[i][j] != 0), None)
            if off is None:
                break
            i, j = off
            # replace basis vector i by e_i + e_j, so the new diagonal is 2 a_ij
            for k in range(n):
                a[i][k] += a[j][k]
            for k in range(n):
                a[k][i] += a[k][j]
            piv = i
        p = a[piv][piv]
        if p > 0:
            pos += 1
        else:
            neg += 1
        rest = [k for k in range(n) if k != piv]
        a = [[a[r][c] - a[r][piv] * a[piv][c] / p for c in rest] for r in rest]
    return pos, neg


# -- constructors --------------------------------------------------------------

def _from_edges(n: int, edges: Sequence[tuple[int, int]], labels: Sequence[str]) -> Lattice:
    g = [[-2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in edges:
        g[i][j] = g[j][i] = 1
    return Lattice(g, labels)


def root_lattice(kind: str, n: int, prefix: str | None = None) -> Lattice:
    """Negative-definite A_n, D_n or E_n with the standard Dynkin labelling."""
    kind = kind.upper()
    if kind == "A" and n >= 1:
        edges = [(i, i + 1) for i in range(n - 1)]
    elif kind == "D" and n >= 4:
        edges = [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    elif kind == "E" and n in (6, 7, 8):
        edges = [(i, i + 1) for i in range(n - 2)] + [(2, n - 1)]
    else:
        raise LatticeError(f"invalid Dynkin type {kind}{n}")
    pre = prefix if prefix is not None else f"{kind.lower()}{n}_"
    return _from_edges(n, edges, [f"{pre}{i + 1}" for i in range(n)])


def hyperbolic_plane(labels: Sequence[str] = ("u1", "u2")) -> Lattice:
    return Lattice([[0, 1], [1, 0]], labels)


def parse_type(name: str) -> tuple[str, int]:
    name = name.strip().upper()
    return name[0], int(name[1:])


def lattice_of_types(types: Sequence[str]) -> Lattice:
    parts = []
    for k, t in enumerate(types):
        kind, n = parse_type(t)
        parts.append(root_lattice(kind, n, prefix=f"{kind.lower()}{n}_{k}_"))
    return direct_sum(*parts)


def k3_lattice() -> Lattice:
    """U^3 + E8^2, even unimodular of signature (3, 19)."""
    return direct_sum(hyperbolic_plane(("u1a", "u1b")), hyperbolic_plane(("u2a", "u2b")),
                      hyperbolic_plane(("u3a", "u3b")), root_lattice("E", 8, "e8a_"),
                      root_lattice("E", 8, "e8b_"))


# -- finite quadratic forms ------------------------------------------------------

@dataclass(frozen=True)
class FiniteQuadraticForm:
    """Finite abelian group sum Z/d_i with q mod 2 on generators, b mod 1 on pairs."""

    orders: tuple
    q: tuple
    b: tuple
    generators: tuple = field(default=(), compare=False)

    def __init__(self, orders: Sequence[int], q: Sequence, b: Sequence[Sequence] | None = None,
                 generators: Sequence[Sequence] = ()):
        orders = tuple(int(d) for d in orders)
        qs = tuple(mod2(Q(x)) for x in q)
        n = len(orders)
        if b is None:
            b = [[Fraction(0)] * n for _ in range(n)]
            for i in range(n):
                b[i][i] = qs[i]
        bs = tuple(tuple(mod1(Q(x)) for x in row) for row in b)
        for i in range(n):
            if bs[i][i] != mod1(qs[i]):
                raise LatticeError("b(g,g) must agree with q(g) mod 1")
            for j in range(n):
                if bs[i][j] != bs[j][i]:
                    raise LatticeError("b must be symmetric")
        object.__setattr__(self, "orders", orders)
        object.__setattr__(self, "q", qs)
        object.__setattr__(self, "b", bs)
        object.__setattr__(self, "generators", tuple(tuple(g) for g in generators))

    @classmethod
    def diagonal(cls, orders: Sequence[int], q: Sequence) -> "FiniteQuadraticForm":
        return cls(orders, q)

    @property
    def order(self) -> int:
        out = 1
        for d in self.orders:
            out *= d
        return out

    def elements(self) -> Iterator[tuple[int, ...]]:
        return itertools.product(*[range(d) for d in self.orders])

    def reduce(self, x: Sequence[int]) -> tuple[int, ...]:
        return tuple(int(a) % d for a, d in zip(x, self.orders))

    def add(self, x: Sequence[int], y: Sequence[int]) -> tuple[int, ...]:
        return self.reduce([a + b for a, b in zip(x, y)])

    def scale(self, k: int, x: Sequence[int]) -> tuple[int, ...]:
        return self.reduce([k * a for a in x])

    def qval(self, x: Sequence[int]) -> Fraction:
        n = len(self.orders)
        total = Fraction(0)
        for i in range(n):
            if x[i]:
                total += x[i] * x[i] * self.q[i]
                for j in range(i + 1, n):
                    if x[j]:
                        total += 2 * x[i] * x[j] * self.b[i][j]
        return mod2(total)

    def bval(self, x: Sequence[int], y: Sequence[int]) -> Fraction:
        total = Fraction(0)
        for i, a in enumerate(x):
            if a:
                for j, c in enumerate(y):
                    if c:
                        total += a * c * self.b[i][j]
        return mod1(total)

    def element_order(self, x: Sequence[int]) -> int:
        k = 1
        for a, d in zip(x, self.orders):
            k = lcm(k, d // gcd(a % d, d))
        return k

    def negate(self) -> "FiniteQuadraticForm":
        n = len(self.orders)
        return FiniteQuadraticForm(self.orders, [-x for x in self.q],
                                   [[-self.b[i][j] for j in range(n)] for i in range(n)],
                                   self.generators)

    def is_trivial(self) -> bool:
        return self.order == 1

    def to_json(self) -> dict:
        return {"orders": list(self.orders), "q": [qstr(x) for x in self.q],
                "b": [[qstr(x) for x in r] for r in self.b]}

    @classmethod
    def from_json(cls, obj: dict) -> "FiniteQuadraticForm":
        return cls(obj["orders"], obj["q"], obj.get("b"))


def fqf_negate(f: FiniteQuadraticForm) -> FiniteQuadraticForm:
    return f.negate()


def fqf_direct_sum(f: FiniteQuadraticForm, g: FiniteQuadraticForm) -> FiniteQuadraticForm:
    n, m = len(f.orders), len(g.orders)
    b = [[Fraction(0)] * (n + m) for _ in range(n + m)]
    for i in range(n):
        for j in range(n):
            b[i][j] = f.b[i][j]
    for i in range(m):
        for j in range(m):
            b[n + i][n + j] = g.b[i][j]
    return FiniteQuadraticForm(f.orders + g.orders, f.q + g.q, b)


def discriminant_group(lat: Lattice) -> FiniteQuadraticForm:
    """Invariant-factor presentation of L^dual/L with its discriminant form.

    The generators are stored as dual vectors in lattice coordinates.
    """
    if not lat.is_even():
        raise LatticeError("discriminant form needs an even lattice")
    if not lat.is_nondegenerate():
        raise LatticeError("lattice is degenerate")
    d, _, v = mx.smith_normal_form(lat.gram)
    n = lat.rank
    gens, orders = [], []
    for i in range(n):
        di = d[i][i]
        if di > 1:
            gens.append([Fraction(v[r][i], di) for r in range(n)])
            orders.append(di)
    k = len(gens)
    q = [lat.norm(g) for g in gens]
    b = [[lat.pair(gens[i], gens[j]) for j in range(k)] for i in range(k)]
    return FiniteQuadraticForm(orders, q, b, gens)


class DiscriminantMap:
    """Coordinates of dual vectors with respect to a lattice's discriminant generators."""

    def __init__(self, lat: Lattice):
        self.lattice = lat
        self.form = discriminant_group(lat)
        d, u, _ = mx.smith_normal_form(lat.gram)
        self._u = u
        self._rows = [i for i in range(lat.rank) if d[i][i] > 1]

    def coords(self, x: Sequence) -> tuple[int, ...]:
        y = mx.mat_vec(self.lattice.gram, [Q(c) for c in x])
        if any(Fraction(c).denominator != 1 for c in y):
            raise LatticeError("vector is not in the dual lattice")
        uy = mx.mat_vec(self._u, [int(c) for c in y])
        return self.form.reduce([uy[i] for i in self._rows])

    def lift(self, x: Sequence[int]) -> list[Fraction]:
        out = [Fraction(0)] * self.lattice.rank
        for a, g in zip(x, self.form.generators):
            for r in range(self.lattice.rank):
                out[r] += a * g[r]
        return out


def element_order_in_disc(lat: Lattice, x: Sequence) -> int:
    xs = [Q(c) for c in x]
    if not lat.is_dual_vector(xs):
        raise LatticeError("vector is not in the dual lattice")
    k = 1
    for c in xs:
        k = lcm(k, c.denominator)
    return k


def fqf_isomorphisms(f: FiniteQuadraticForm, g: FiniteQuadraticForm) -> Iterator[list[list[int]]]:
    """All isometries f -> g as generator-image matrices.

    Column j holds the coordinates in g's generators of the image of f's
    generator j.
    """
    if f.order != g.order:
        return
    n = len(f.orders)
    if n == 0:
        yield []
        return
    elems = list(g.elements())
    by_order_q: dict[tuple[int, Fraction], list[tuple[int, ...]]] = {}
    for e in elems:
        by_order_q.setdefault((g.element_order(e), g.qval(e)), []).append(e)
    cands = [by_order_q.get((f.orders[j], f.q[j]), []) for j in range(n)]

    def rec(j: int, chosen: list[tuple[int, ...]]) -> Iterator[list[tuple[int, ...]]]:
        if j == n:
            yield list(chosen)
            return
        for c in cands[j]:
            if all(g.bval(chosen[i], c) == f.b[i][j] for i in range(j)):
                chosen.append(c)
                yield from rec(j + 1, chosen)
                chosen.pop()

    for images in rec(0, []):
        if _generates(g, images, f.order):
            yield [[images[j][i] for j in range(n)] for i in range(len(g.orders))]


def _generates(g: FiniteQuadraticForm, gens: Sequence[tuple[int, ...]], size: int) -> bool:
    seen = {g.reduce([0] * len(g.orders))}
    frontier = list(seen)
    while frontier:
        nxt = []
        for x in frontier:
            for h in gens:
                y = g.add(x, h)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > size:
                        return False
        frontier = nxt
    return len(seen) == size


def fqf_isomorphic(f: FiniteQuadraticForm, g: FiniteQuadraticForm) -> list[list[int]] | None:
    return next(fqf_isomorphisms(f, g), None)


def apply_witness(f: FiniteQuadraticForm, g: FiniteQuadraticForm, m: Sequence[Sequence[int]],
                  x: Sequence[int]) -> tuple[int, ...]:
    """Image under the witness matrix of an element written in f's generators."""
    return g.reduce([sum(m[i][j] * x[j] for j in range(len(x))) for i in range(len(g.orders))])


def is_isometry(f: FiniteQuadraticForm, g: FiniteQuadraticForm, m: Sequence[Sequence[int]]) -> bool:
    n = len(f.orders)
    if f.order != g.order:
        return False
    zero = g.reduce([0] * len(g.orders))
    images = [g.reduce([m[i][j] for i in range(len(g.orders))]) for j in range(n)]
    for j in range(n):
        if g.scale(f.orders[j], images[j]) != zero or g.qval(images[j]) != f.q[j]:
            return False
        for i in range(j):
            if g.bval(images[i], images[j]) != f.b[i][j]:
                return False
    return _generates(g, images, f.order)


def check_complement_duality(lat: Lattice, rows: Sequence[Sequence[int]]) -> dict:
    """Orthogonal complement J2 of J1 in a unimodular lattice and q_J1 = -q_J2."""
    if abs(lat.det()) != 1:
        raise LatticeError("ambient lattice is not unimodular")
    if not lat.is_even():
        raise LatticeError("ambient lattice is not even")
    j1 = lat.sublattice(rows)
    if not j1.is_nondegenerate():
        raise LatticeError("J1 is degenerate")
    if not mx.is_primitive_sublattice(rows):
        raise LatticeError("J1 is not primitive")
    comp = lat.orthogonal_complement(rows)
    j2 = lat.sublattice(comp)
    q1 = discriminant_group(j1)
    q2 = discriminant_group(j2)
    witness = fqf_isomorphic(q1, q2.negate())
    return {
        "rank_j1": j1.rank,
        "rank_j2": j2.rank,
        "det_j1": j1.det(),
        "det_j2": j2.det(),
        "orders_j1": list(q1.orders),
        "orders_j2": list(q2.orders),
        "q_j1": [qstr(x) for x in q1.q],
        "q_j2": [qstr(x) for x in q2.q],
        "complement_basis": comp,
        "witness": witness,
        "holds": witness is not None,
    }

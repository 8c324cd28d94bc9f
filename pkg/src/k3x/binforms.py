"""Positive-definite even binary forms and transcendental-lattice matching."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterator, Sequence

from . import matrix as mx
from .lattice import (DiscriminantMap, Lattice, LatticeError, discriminant_group,
                      fqf_isomorphic)
from .rational import Q


@dataclass(frozen=True, order=True)
class BinaryForm:
    b11: int
    b12: int
    b22: int

    def __post_init__(self) -> None:
        if self.b11 <= 0 or self.det <= 0:
            raise LatticeError(f"form {self.gram} is not positive definite")

    @classmethod
    def from_gram(cls, g: Sequence[Sequence[int]]) -> "BinaryForm":
        if len(g) != 2 or g[0][1] != g[1][0]:
            raise LatticeError("expected a symmetric 2x2 Gram matrix")
        return cls(int(g[0][0]), int(g[0][1]), int(g[1][1]))

    @property
    def gram(self) -> list[list[int]]:
        return [[self.b11, self.b12], [self.b12, self.b22]]

    @property
    def det(self) -> int:
        return self.b11 * self.b22 - self.b12 * self.b12

    def is_even(self) -> bool:
        return self.b11 % 2 == 0 and self.b22 % 2 == 0

    def is_reduced(self) -> bool:
        a, b, c = self.b11, self.b12, self.b22
        if not (-a < 2 * b <= a <= c):
            return False
        return b >= 0 or a != c

    def lattice(self) -> Lattice:
        return Lattice(self.gram, ["e1", "e2"])

    def transform(self, m: Sequence[Sequence[int]]) -> "BinaryForm":
        return BinaryForm.from_gram(mx.mat_mul(mx.mat_mul(mx.transpose(m), self.gram), m))

    def to_json(self) -> dict:
        return {"gram": self.gram}

    def __str__(self) -> str:
        return f"[[{self.b11},{self.b12}],[{self.b12},{self.b22}]]"


def reduce(f: BinaryForm) -> tuple[BinaryForm, list[list[int]]]:
    """Reduced representative of the SL2(Z) class of f and the transform P.

    The result satisfies -b11 < 2 b12 <= b11 <= b22 with b12 >= 0 when
    b11 = b22, and P^T f P equals it.
    """
    a, b, c = f.b11, f.b12, f.b22
    p = [[1, 0], [0, 1]]
    while True:
        # translate: b -> b + k a with e2 -> e2 + k e1
        k = (a - 2 * b) // (2 * a)
        if k:
            c = c + 2 * k * b + k * k * a
            b = b + k * a
            p = [[p[0][0], p[0][1] + k * p[0][0]], [p[1][0], p[1][1] + k * p[1][0]]]
        if a > c or (a == c and b < 0):
            # swap with orientation: (e1, e2) -> (e2, -e1)
            a, b, c = c, -b, a
            p = [[p[0][1], -p[0][0]], [p[1][1], -p[1][0]]]
            continue
        break
    red = BinaryForm(a, b, c)
    assert f.transform(p) == red and mx.det_bareiss(p) == 1
    return red, p


def enumerate_by_det(d: int, even: bool = True) -> list[BinaryForm]:
    """All reduced positive-definite forms of determinant d (even by default)."""
    out = []
    # reduction gives 3 b11^2 <= 4 d
    a = 1
    while 3 * a * a <= 4 * d:
        if not even or a % 2 == 0:
            for b in range(-((a - 1) // 2), a // 2 + 1):
                num = d + b * b
                if num % a:
                    continue
                c = num // a
                if c < a or (even and c % 2):
                    continue
                f = BinaryForm(a, b, c)
                if f.is_reduced():
                    out.append(f)
        a += 1
    return sorted(out)


def dual_generators(f: BinaryForm) -> tuple[list[Fraction], list[Fraction]]:
    """Columns of the inverse Gram, as coordinates in e1, e2."""
    inv = mx.inverse(f.gram)
    return [inv[0][0], inv[1][0]], [inv[0][1], inv[1][1]]


def element_order(vec: Sequence[Fraction]) -> int:
    return lcm(*(Fraction(x).denominator for x in vec))


# -- anti-isometry witnesses -----------------------------------------------------------

def _in_lattice(v: Sequence[Fraction]) -> bool:
    return all(Fraction(x).denominator == 1 for x in v)


def witness_images(s_gens: Sequence[Sequence], b: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    n = len(b[0]) if b else 0
    rank = len(s_gens[0])
    return [[sum((b[i][j] * Q(s_gens[i][r]) for i in range(len(s_gens))), Fraction(0))
             for r in range(rank)] for j in range(n)]


def check_witness(t: BinaryForm, s: Lattice, s_gens: Sequence[Sequence],
                  b: Sequence[Sequence[int]], s_coords=None) -> dict:
    """Whether g_j -> sum_i B_ij eps_i is an anti-isometry G_T -> G_S.

    ``g_j`` are the dual generators of T.  ``s_coords`` optionally maps a
    vector in the ambient coordinates of ``s_gens`` to vectors in S; by
    default ``s_gens`` are already in S coordinates.
    """
    s_gens = [list(map(Q, g)) for g in s_gens]
    if s_coords is not None:
        s_gens = [s_coords(g) for g in s_gens]
    gs = dual_generators(t)
    tl = t.lattice()
    imgs = witness_images(s_gens, b)
    problems = []
    dm = DiscriminantMap(s)
    for g in s_gens:
        if not s.is_dual_vector(g):
            problems.append("generator is not a dual vector")
    if problems:
        return {"pass": False, "problems": problems}
    # well defined: relations T k of G_T map into S
    for k in range(2):
        rel = [sum(t.gram[j][k] * imgs[j][r] for j in range(2)) for r in range(s.rank)]
        if not _in_lattice(rel):
            problems.append(f"relation {k} does not map to zero")
    for j in range(2):
        if (s.norm(imgs[j]) + tl.norm(gs[j])) % 2:
            problems.append(f"q not negated on g{j + 1}")
        for k in range(j):
            if (s.pair(imgs[j], imgs[k]) + tl.pair(gs[j], gs[k])) % 1:
                problems.append(f"b not negated on (g{k + 1}, g{j + 1})")
    form = dm.form
    img_cls = [dm.coords(v) for v in imgs]
    span = {form.reduce([0] * len(form.orders))}
    frontier = list(span)
    while frontier:
        nxt = []
        for x in frontier:
            for h in img_cls:
                y = form.add(x, h)
                if y not in span:
                    span.add(y)
                    nxt.append(y)
        frontier = nxt
    if len(span) != form.order or abs(t.det) != form.order:
        problems.append("map is not bijective")
    return {"pass": not problems, "problems": problems}


def find_witnesses(t: BinaryForm, s: Lattice, s_gens: Sequence[Sequence],
                   s_coords=None) -> Iterator[list[list[int]]]:
    """All witness matrices B with entries reduced modulo the orders of the eps_i."""
    gens = [list(map(Q, g)) for g in s_gens]
    if s_coords is not None:
        gens = [s_coords(g) for g in gens]
    dm = DiscriminantMap(s)
    orders = [dm.form.element_order(dm.coords(g)) for g in gens]
    gs = dual_generators(t)
    tl = t.lattice()
    cols: list[list[tuple[int, ...]]] = []
    for j in range(2):
        target = -tl.norm(gs[j])
        ok = []
        for coeffs in itertools.product(*[range(o) for o in orders]):
            v = witness_images(gens, [[c] for c in coeffs])[0]
            if (s.norm(v) - target) % 2 == 0:
                ok.append(coeffs)
        cols.append(ok)
    for c1 in cols[0]:
        for c2 in cols[1]:
            b = [[c1[i], c2[i]] for i in range(len(gens))]
            if check_witness(t, s, gens, b)["pass"]:
                yield b


def match_transcendental(s: Lattice, s_gens: Sequence[Sequence] | None = None
                         ) -> list[tuple[BinaryForm, list[list[int]]]]:
    """Even positive binary forms T with q_T isomorphic to -q_S, with witnesses.

    Without ``s_gens`` the witness uses the invariant-factor generators of
    both discriminant groups (column j is the image of T's generator j).
    With ``s_gens`` it is the least matrix B sending the dual generators
    g_j of T to sum_i B_ij s_gens[i].
    """
    if not s.is_even():
        raise LatticeError("lattice is not even")
    if s.rank != 20:
        raise LatticeError("expected a rank-20 lattice")
    d = abs(s.det())
    qs = discriminant_group(s).negate()
    out = []
    for f in enumerate_by_det(d):
        if s_gens is None:
            w = fqf_isomorphic(discriminant_group(f.lattice()), qs)
        else:
            w = next(find_witnesses(f, s, s_gens), None)
        if w is not None:
            out.append((f, w))
    return out

"""Independent reference computations used only by the tests.

Nothing here imports the package's algorithms: roots are found by brute force
over the highest-root box, forms by direct search, profiles and discriminants
through sympy, Milnor numbers through a sympy Groebner basis.
"""
from __future__ import annotations

import itertools
from math import isqrt

import numpy as np
import sympy as sp

# coefficient bound of the highest root in the simple-root basis
HIGHEST_ROOT_BOUND = {"A": 1, "D": 2, "E6": 3, "E7": 4, "E8": 6}


def cartan(kind: str, n: int) -> np.ndarray:
    """Negative Cartan matrix with the standard Dynkin labelling."""
    if kind == "A":
        edges = [(i, i + 1) for i in range(n - 1)]
    elif kind == "D":
        edges = [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    else:
        edges = [(i, i + 1) for i in range(n - 2)] + [(2, n - 1)]
    g = -2 * np.eye(n, dtype=np.int64)
    for i, j in edges:
        g[i, j] = g[j, i] = 1
    return g


def brute_force_root_count(kind: str, n: int) -> int:
    """Twice the number of norm -2 vectors in the box 0 <= x_i <= highest-root coefficient.

    Every root is positive or negative, and positive roots lie under the highest root.
    """
    bound = HIGHEST_ROOT_BOUND.get(f"{kind}{n}", HIGHEST_ROOT_BOUND.get(kind))
    g = cartan(kind, n)
    axis = np.arange(0, bound + 1, dtype=np.int64)
    if n == 1:
        rest = np.zeros((1, 0), dtype=np.int64)
    else:
        rest = np.array(np.meshgrid(*([axis] * (n - 1)), indexing="ij")).reshape(n - 1, -1).T
    count = 0
    for first in axis:
        grid = np.hstack([np.full((len(rest), 1), first, dtype=np.int64), rest])
        norms = np.einsum("ij,jk,ik->i", grid, g, grid)
        count += int(np.count_nonzero(norms == -2))
    return 2 * count


def reduced_forms_by_search(d: int, even: bool = True) -> list[tuple[int, int, int]]:
    """(a, b, c) with ac - b^2 = d, -a < 2b <= a <= c, b >= 0 if a = c."""
    out = []
    for a in range(1, isqrt(4 * d // 3) + 2):
        for b in range(-a, a + 1):
            if not -a < 2 * b <= a:
                continue
            if (d + b * b) % a:
                continue
            c = (d + b * b) // a
            if c < a or (a == c and b < 0):
                continue
            if even and (a % 2 or c % 2):
                continue
            out.append((a, b, c))
    return sorted(out)


def sl2_word(letters: list[int]) -> list[list[int]]:
    """Product of S = [[0,-1],[1,0]] and T^k = [[1,k],[0,1]] factors."""
    m = sp.eye(2)
    for k in letters:
        if k == 0:
            m = m * sp.Matrix([[0, -1], [1, 0]])
        else:
            m = m * sp.Matrix([[1, k], [0, 1]])
    return [[int(x) for x in m.row(i)] for i in range(2)]


def _cycle_type(p: tuple) -> tuple:
    seen, parts = set(), []
    for i in range(len(p)):
        if i in seen:
            continue
        k, j = 0, i
        while j not in seen:
            seen.add(j)
            j = p[j]
            k += 1
        parts.append(k)
    return tuple(sorted(parts, reverse=True))


def triple_classes_by_brute_force(types: list[tuple], d: int) -> int:
    """Simultaneous conjugacy classes of transitive (s0, s1) with s0 s1 s_inf = 1."""
    perms = list(itertools.permutations(range(d)))
    comp = lambda p, q: tuple(p[i] for i in q)  # noqa: E731

    def inv(p):
        out = [0] * d
        for i, j in enumerate(p):
            out[j] = i
        return tuple(out)

    def transitive(a, b):
        seen, todo = {0}, [0]
        while todo:
            i = todo.pop()
            for g in (a, b):
                if g[i] not in seen:
                    seen.add(g[i])
                    todo.append(g[i])
        return len(seen) == d

    keys = set()
    for a in perms:
        if _cycle_type(a) != tuple(types[0]):
            continue
        for b in perms:
            if _cycle_type(b) != tuple(types[1]):
                continue
            c = inv(comp(a, b))
            if _cycle_type(c) != tuple(types[2]) or not transitive(a, b):
                continue
            keys.add(min((comp(comp(h, a), inv(h)), comp(comp(h, b), inv(h))) for h in perms))
    return len(keys)


def sympy_profile(num: str, den: str, at, field_ext=None) -> tuple:
    """Preimage multiplicities of w = num/den over a point (or 'inf')."""
    z = sp.Symbol("z")
    n, m = sp.sympify(num), sp.sympify(den)
    d = max(sp.degree(n, z), sp.degree(m, z))
    poly = m if at == "inf" else sp.expand(n - sp.sympify(at) * m)
    kw = {"extension": field_ext} if field_ext is not None else {}
    _, factors = sp.factor_list(poly, z, **kw)
    parts = []
    for f, e in factors:
        parts += [e] * sp.degree(f, z)
    if sum(parts) < d:
        parts.append(d - sum(parts))
    return tuple(sorted(parts, reverse=True))


def sympy_delta_orders(a: str, b: str) -> dict:
    """Order of vanishing of -16(4A^3 + 27B^2) at each irreducible factor, plus infinity."""
    s = sp.Symbol("s")
    delta = sp.expand(-16 * (4 * sp.sympify(a) ** 3 + 27 * sp.sympify(b) ** 2))
    _, factors = sp.factor_list(delta, s)
    out = {str(sp.expand(f)): e for f, e in factors}
    out["inf"] = 12 - sp.degree(delta, s)
    return out


def groebner_milnor(expr: str) -> int:
    """dim Q[u,w]/(f_u, f_w) by counting standard monomials of a Groebner basis."""
    u, w = sp.symbols("u w")
    f = sp.sympify(expr)
    g = sp.groebner([sp.diff(f, u), sp.diff(f, w)], u, w, order="grevlex")
    leads = [sp.Poly(p, u, w).monoms(order="grevlex")[0] for p in g.exprs]
    bound = 60
    count = 0
    for i in range(bound):
        for j in range(bound):
            if not any(i >= a and j >= b for a, b in leads):
                count += 1
    if any(not any(i >= a and j >= b for a, b in leads) for i, j in ((bound, 0), (0, bound))):
        raise ValueError("quotient is not finite within the bound")
    return count

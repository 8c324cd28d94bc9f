"""Integer and rational matrices as lists of rows.

Integer normal forms (Smith, Hermite) keep track of the unimodular
transforms so that discriminant groups and sublattice bases can be read
off exactly.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Any, Sequence

Matrix = list


def shape(m: Sequence[Sequence]) -> tuple[int, int]:
    return len(m), (len(m[0]) if m else 0)


def identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(r: int, c: int) -> list[list[int]]:
    return [[0] * c for _ in range(r)]


def transpose(m: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*m)] if m else []


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_vec(a: Sequence[Sequence], v: Sequence) -> list:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def vec_mat(v: Sequence, a: Sequence[Sequence]) -> list:
    return [sum(v[i] * a[i][j] for i in range(len(v))) for j in range(len(a[0]))]


def bilinear(x: Sequence, gram: Sequence[Sequence], y: Sequence) -> Any:
    total = 0
    for i, xi in enumerate(x):
        if xi == 0:
            continue
        row = gram[i]
        total += xi * sum(row[j] * y[j] for j in range(len(y)) if y[j] != 0)
    return total


def block_diag(*blocks: Sequence[Sequence]) -> list[list]:
    n = sum(len(b) for b in blocks)
    out = zeros(n, n)
    off = 0
    for b in blocks:
        k = len(b)
        for i in range(k):
            for j in range(k):
                out[off + i][off + j] = b[i][j]
        off += k
    return out


def is_symmetric(m: Sequence[Sequence]) -> bool:
    n = len(m)
    return all(len(r) == n for r in m) and all(m[i][j] == m[j][i] for i in range(n) for j in range(n))


# -- determinants -----------------------------------------------------------

def det_bareiss(m: Sequence[Sequence[int]]) -> int:
    """Fraction-free determinant of an integer matrix."""
    a = [list(r) for r in m]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def det(m: Sequence[Sequence]) -> Any:
    if all(isinstance(x, int) for r in m for x in r):
        return det_bareiss(m)
    from .upoly import field_det

    return field_det([[Fraction(x) if isinstance(x, int) else x for x in r] for r in m])


# -- rational linear algebra -------------------------------------------------

def rref(m: Sequence[Sequence], zero: Any = Fraction(0)) -> tuple[list[list], list[int]]:
    """Reduced row echelon form over a field; returns (rows, pivot columns)."""
    a = [[x if not isinstance(x, int) else Fraction(x) for x in r] for r in m]
    rows, cols = shape(a)
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def rank(m: Sequence[Sequence]) -> int:
    if not m:
        return 0
    return len(rref(m)[1])


def kernel(m: Sequence[Sequence]) -> list[list]:
    """Basis of the right kernel {x : m x = 0} over the field."""
    rows, cols = shape(m)
    if rows == 0:
        return [[Fraction(int(i == j)) for i in range(cols)] for j in range(cols)]
    red, piv = rref(m)
    free = [c for c in range(cols) if c not in piv]
    basis = []
    one = Fraction(1)
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = one
        for i, p in enumerate(piv):
            v[p] = -red[i][f]
        basis.append(v)
    return basis


def inverse(m: Sequence[Sequence]) -> list[list]:
    n = len(m)
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(m)]
    red, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [r[n:] for r in red[:n]]


def solve(m: Sequence[Sequence], b: Sequence) -> list | None:
    """One solution of m x = b, or None."""
    rows, cols = shape(m)
    aug = [list(m[i]) + [b[i]] for i in range(rows)]
    red, piv = rref(aug)
    if cols in piv:
        return None
    x = [Fraction(0)] * cols
    for i, p in enumerate(piv):
        x[p] = red[i][cols]
    return x


# -- integer normal forms ----------------------------------------------------

def smith_normal_form(m: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Return (D, U, V) with U*M*V = D diagonal, d_i | d_{i+1}, d_i >= 0."""
    a = [list(r) for r in m]
    rows, cols = shape(a)
    u = identity(rows)
    v = identity(cols)

    def swap_rows(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i: int, j: int) -> None:
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(dst: int, src: int, k: int) -> None:
        if k:
            a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
            u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(dst: int, src: int, k: int) -> None:
        if k:
            for r in a:
                r[dst] += k * r[src]
            for r in v:
                r[dst] += k * r[src]

    t = 0
    while t < min(rows, cols):
        # pick the smallest nonzero entry in the remaining block as pivot
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            done = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    add_row(i, t, -q)
                    if a[i][t]:
                        done = False
                        swap_rows(t, i)
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    add_col(j, t, -q)
                    if a[t][j]:
                        done = False
                        swap_cols(t, j)
            if not done:
                continue
            # enforce divisibility of the rest of the block
            bad = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if a[i][j] % a[t][t]:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return a, u, v


def invariant_factors(m: Sequence[Sequence[int]]) -> list[int]:
    d, _, _ = smith_normal_form(m)
    return [d[i][i] for i in range(min(shape(d)))]


def hnf_rows(m: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row-style Hermite normal form; zero rows removed.

    The result is an upper-triangular basis of the row lattice with
    positive pivots and reduced entries above the pivots.
    """
    a = [list(r) for r in m if any(r)]
    rows, cols = shape(a)
    r = 0
    for c in range(cols):
        if r >= len(a):
            break
        rest = [i for i in range(r, len(a)) if a[i][c] != 0]
        if not rest:
            continue
        while True:
            rest = [i for i in range(r, len(a)) if a[i][c] != 0]
            if not rest:
                break
            piv = min(rest, key=lambda i: abs(a[i][c]))
            a[r], a[piv] = a[piv], a[r]
            others = [i for i in range(r + 1, len(a)) if a[i][c] != 0]
            if not others:
                break
            for i in others:
                q = a[i][c] // a[r][c]
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
        if a[r][c] == 0:
            continue
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
        for i in range(r):
            q = a[i][c] // a[r][c]
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
        r += 1
    return [row for row in a[:r] if any(row)]


def integer_kernel(m: Sequence[Sequence[int]]) -> list[list[int]]:
    """Z-basis of {x in Z^n : m x = 0} (as a list of vectors)."""
    rows, cols = shape(m)
    if rows == 0:
        return identity(cols)
    d, _, v = smith_normal_form(m)
    r = sum(1 for i in range(min(rows, cols)) if d[i][i] != 0)
    return [[v[i][j] for i in range(cols)] for j in range(r, cols)]


def common_denominator(vecs: Sequence[Sequence]) -> int:
    from math import lcm

    den = 1
    for vec in vecs:
        for x in vec:
            den = lcm(den, Fraction(x).denominator)
    return den


def saturate(vecs: Sequence[Sequence[int]]) -> list[list[int]]:
    """Basis of (Q-span of vecs) intersected with Z^n."""
    if not vecs:
        return []
    n = len(vecs[0])
    ker = integer_kernel(vecs)  # x with vecs x = 0, i.e. orthogonal complement
    if not ker:
        return identity(n)
    return integer_kernel(ker)


def is_primitive_sublattice(vecs: Sequence[Sequence[int]]) -> bool:
    """Whether the rows span a saturated subgroup of Z^n."""
    if not vecs:
        return True
    d = invariant_factors(vecs)
    nz = [x for x in d if x != 0]
    return len(nz) == len(vecs) and all(x == 1 for x in nz)


def extend_to_unimodular(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Complete a primitive set of integer rows to a unimodular basis."""
    k = len(rows)
    n = len(rows[0])
    if not is_primitive_sublattice(rows):
        raise ValueError("rows do not span a primitive sublattice")
    d, u, v = smith_normal_form(rows)
    # rows = U^{-1} D V^{-1} with D = [I_k | 0]; the last rows of V^{-1} extend it
    vinv = [[int(x) for x in r] for r in inverse(v)]
    basis = [list(r) for r in rows] + vinv[k:]
    if abs(det_bareiss(basis)) != 1:
        raise ArithmeticError("failed to extend to a unimodular basis")
    return basis

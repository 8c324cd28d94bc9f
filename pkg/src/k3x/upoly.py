"""Dense univariate polynomials over an exact field.

Polynomials are plain lists of coefficients, lowest degree first.  The
helpers only rely on ``+ - * /`` and comparison with ``0``, so they work
for :class:`fractions.Fraction` as well as number-field elements.
"""
from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Any, Iterable, Sequence

Coeffs = list


def strip(p: Iterable[Any]) -> list:
    out = list(p)
    while out and out[-1] == 0:
        out.pop()
    return out


def degree(p: Sequence) -> int:
    """Degree of a stripped polynomial; -1 for the zero polynomial."""
    return len(p) - 1


def add(p: Sequence, q: Sequence) -> list:
    n = max(len(p), len(q))
    zero = _zero_like(p, q)
    return strip((p[i] if i < len(p) else zero) + (q[i] if i < len(q) else zero)
                 for i in range(n))


def sub(p: Sequence, q: Sequence) -> list:
    n = max(len(p), len(q))
    zero = _zero_like(p, q)
    return strip((p[i] if i < len(p) else zero) - (q[i] if i < len(q) else zero)
                 for i in range(n))


def neg(p: Sequence) -> list:
    return [-c for c in p]


def scale(p: Sequence, c: Any) -> list:
    return strip(a * c for a in p)


def mul(p: Sequence, q: Sequence) -> list:
    if not p or not q:
        return []
    out = [p[0] * 0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return strip(out)


def power(p: Sequence, e: int) -> list:
    result = [p[0] ** 0] if p else [1]
    base = list(p)
    while e:
        if e & 1:
            result = mul(result, base)
        e >>= 1
        if e:
            base = mul(base, base)
    return result


def divmod_poly(p: Sequence, q: Sequence) -> tuple[list, list]:
    q = strip(q)
    if not q:
        raise ZeroDivisionError("division by the zero polynomial")
    r = strip(p)
    dq = len(q) - 1
    inv_lc = 1 / q[-1] if not isinstance(q[-1], int) else Fraction(1, q[-1])
    if len(r) <= dq:
        return [], r
    quot = [r[0] * 0] * (len(r) - dq)
    while len(r) - 1 >= dq and r:
        k = len(r) - 1 - dq
        c = r[-1] * inv_lc
        quot[k] = c
        for i, b in enumerate(q):
            r[k + i] = r[k + i] - c * b
        r.pop()
        r = strip(r)
    return strip(quot), r


def monic(p: Sequence) -> list:
    p = strip(p)
    if not p:
        return []
    lc = p[-1]
    inv = 1 / lc if not isinstance(lc, int) else Fraction(1, lc)
    return [c * inv for c in p]


def gcd(p: Sequence, q: Sequence) -> list:
    """Monic greatest common divisor (zero polynomial if both are zero)."""
    a, b = strip(p), strip(q)
    while b:
        _, r = divmod_poly(a, b)
        a, b = b, r
    return monic(a)


def ext_gcd(p: Sequence, q: Sequence) -> tuple[list, list, list]:
    """Return (g, s, t) with s*p + t*q = g and g monic."""
    r0, r1 = strip(p), strip(q)
    one = _one_like(p, q)
    s0, s1 = [one], []
    t0, t1 = [], [one]
    while r1:
        quo, r = divmod_poly(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(quo, s1))
        t0, t1 = t1, sub(t0, mul(quo, t1))
    if not r0:
        return [], s0, t0
    lc = r0[-1]
    inv = 1 / lc if not isinstance(lc, int) else Fraction(1, lc)
    return scale(r0, inv), scale(s0, inv), scale(t0, inv)


def derivative(p: Sequence) -> list:
    return strip(p[i] * i for i in range(1, len(p)))


def evaluate(p: Sequence, x: Any) -> Any:
    acc = x * 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def compose(p: Sequence, q: Sequence) -> list:
    """p(q(t))."""
    out: list = []
    for c in reversed(p):
        out = add(mul(out, q), [c])
    return out


def squarefree_decomposition(p: Sequence) -> list[tuple[int, list]]:
    """Yun's algorithm: p = c * prod q_i^i with q_i squarefree, coprime.

    Returns the pairs (i, q_i) with deg q_i > 0, q_i monic.
    """
    p = strip(p)
    if not p:
        raise ValueError("zero polynomial has no squarefree decomposition")
    if len(p) == 1:
        return []
    dp = derivative(p)
    a = gcd(p, dp)
    b, _ = divmod_poly(p, a)
    c, _ = divmod_poly(dp, a)
    d = sub(c, derivative(b))
    out = []
    i = 1
    while len(b) > 1:
        a = gcd(b, d)
        if len(a) > 1:
            out.append((i, a))
        b, _ = divmod_poly(b, a)
        c, _ = divmod_poly(d, a)
        d = sub(c, derivative(b))
        i += 1
    return out


def squarefree_multiplicity_profile(p: Sequence) -> list[tuple[int, int]]:
    """Pairs (multiplicity i, number of roots of multiplicity i), by multiplicity."""
    return [(i, degree(q)) for i, q in squarefree_decomposition(p)]


def sylvester_matrix(p: Sequence, q: Sequence) -> list[list]:
    p, q = strip(p), strip(q)
    m, n = len(p) - 1, len(q) - 1
    zero = _zero_like(p, q)
    size = m + n
    rows = []
    for i in range(n):
        row = [zero] * size
        for j, c in enumerate(reversed(p)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for j, c in enumerate(reversed(q)):
            row[i + j] = c
        rows.append(row)
    return rows


def field_det(rows: Sequence[Sequence]) -> Any:
    """Determinant by Gaussian elimination over a field."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    det = a[0][0] ** 0
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return a[0][0] * 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        pv = a[col][col]
        det = det * pv
        inv = 1 / pv if not isinstance(pv, int) else Fraction(1, pv)
        for r in range(col + 1, n):
            f = a[r][col]
            if f == 0:
                continue
            f = f * inv
            row_r, row_c = a[r], a[col]
            for k in range(col, n):
                row_r[k] = row_r[k] - f * row_c[k]
    return det


def resultant(p: Sequence, q: Sequence) -> Any:
    p, q = strip(p), strip(q)
    if not p and not q:
        raise ValueError("resultant of two zero polynomials")
    if not p or not q:
        return (p or q)[0] * 0
    if len(p) == 1 and len(q) == 1:
        return p[0] ** 0
    return field_det(sylvester_matrix(p, q))


# --- rational polynomials -------------------------------------------------

def to_integer_primitive(p: Sequence[Fraction]) -> list[int]:
    """Scale a rational polynomial to a primitive integer polynomial."""
    from math import gcd as igcd, lcm

    p = strip(Fraction(c) for c in p)
    if not p:
        return []
    den = 1
    for c in p:
        den = lcm(den, c.denominator)
    ints = [int(c * den) for c in p]
    g = 0
    for c in ints:
        g = igcd(g, c)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def _sturm_sequence(p: list[Fraction]) -> list[list[Fraction]]:
    seq = [p, derivative(p)]
    while seq[-1]:
        _, r = divmod_poly(seq[-2], seq[-1])
        seq.append(neg(r))
    seq.pop()
    return seq


def _sign_changes(seq: list[list[Fraction]], x: Fraction) -> int:
    signs = []
    for s in seq:
        v = evaluate(s, x)
        if v != 0:
            signs.append(v > 0)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def rational_roots(p: Sequence) -> list[Fraction]:
    """All distinct rational roots, found by exact Sturm bisection.

    A rational root r of the primitive integer polynomial with leading
    coefficient a satisfies a*r in Z, so isolating intervals shorter than
    1/(2a) pin down the unique candidate, which is then checked exactly.
    """
    ints = to_integer_primitive(p)
    if len(ints) <= 1:
        return []
    roots: set[Fraction] = set()
    # roots at zero first
    while ints and ints[0] == 0:
        roots.add(Fraction(0))
        ints = ints[1:]
    if len(ints) <= 1:
        return sorted(roots)
    f = [Fraction(c) for c in ints]
    sqf, _ = divmod_poly(f, gcd(f, derivative(f)))
    lead = ints[-1]
    bound = Fraction(1 + max(abs(c) for c in ints[:-1]) , 1) / abs(Fraction(lead)) + 1
    seq = _sturm_sequence(sqf)
    target = Fraction(1, 4 * abs(lead))
    stack = [(-bound, bound, _sign_changes(seq, -bound), _sign_changes(seq, bound))]
    while stack:
        lo, hi, slo, shi = stack.pop()
        count = slo - shi
        if count == 0:
            continue
        if hi - lo < target:
            k_lo = int((lo * lead).__floor__()) - 1
            k_hi = int((hi * lead).__ceil__()) + 1
            for k in range(min(k_lo, k_hi), max(k_lo, k_hi) + 1):
                cand = Fraction(k, lead)
                if lo - target <= cand <= hi + target and evaluate(f, cand) == 0:
                    roots.add(cand)
            continue
        mid = (lo + hi) / 2
        if evaluate(sqf, mid) == 0:
            roots.add(mid)
        smid = _sign_changes(seq, mid)
        stack.append((lo, mid, slo, smid))
        stack.append((mid, hi, smid, shi))
    return sorted(r for r in roots if evaluate(f, r) == 0)


def has_rational_root(p: Sequence) -> bool:
    return bool(rational_roots(p))


def rational_sqrt(x: Fraction) -> Fraction | None:
    """Exact square root of a non-negative rational, or None."""
    x = Fraction(x)
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def has_quadratic_factor(p: Sequence) -> bool:
    """Whether a rational quartic splits as a product of two quadratics.

    Undetermined coefficients over Z after making the polynomial monic
    and integral (Gauss's lemma), enumerating divisor pairs of the
    constant term.
    """
    from math import lcm

    f = monic([Fraction(c) for c in p])
    if len(f) != 5:
        raise ValueError("quadratic-factor search expects a quartic")
    den = 1
    for c in f:
        den = lcm(den, c.denominator)
    # g(y) = den^4 f(y/den) is monic with integer coefficients
    g = [int(f[i] * den ** (4 - i)) for i in range(5)]
    g0, g1, g2, g3 = g[0], g[1], g[2], g[3]
    if g0 == 0:
        return True
    for b in _divisors(abs(g0)):
        for bb in (b, -b):
            d = g0 // bb
            if d == bb:
                if g1 != bb * g3:
                    continue
                disc = g3 * g3 - 4 * (g2 - 2 * bb)
                if disc >= 0 and isqrt(disc) ** 2 == disc:
                    return True
                continue
            num = g1 - bb * g3
            if num % (d - bb):
                continue
            a = num // (d - bb)
            c = g3 - a
            if a * c + bb + d == g2:
                return True
    return False


def _divisors(n: int) -> list[int]:
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def _zero_like(*polys: Sequence) -> Any:
    for p in polys:
        if len(p):
            return p[0] * 0
    return 0


def _one_like(*polys: Sequence) -> Any:
    for p in polys:
        if len(p):
            return p[0] ** 0
    return 1

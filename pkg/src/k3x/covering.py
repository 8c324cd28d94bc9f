"""Ramification of explicit rational maps and checks on Weierstrass models."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

from . import matrix as mx
from . import upoly as up
from .mpoly import MultiPoly, parse
from .numfield import QQ, field_from_json

INF = "inf"


def _poly_from(obj: Any, field: Any, var: str) -> list:
    if isinstance(obj, str):
        return parse(obj, field, (var,)).univariate(0) if obj.strip() else []
    if isinstance(obj, list) and (not obj or isinstance(obj[0], dict)):
        return MultiPoly.from_json(obj, field, (var,)).univariate(0)
    return [field(c) for c in obj]


def _coerce(field: Any, p: Sequence) -> list:
    return up.strip([field(c) for c in p])


@dataclass
class RationalMap:
    """w = num(z) / den(z) with coprime numerator and denominator."""

    field: Any
    num: list
    den: list
    var: str = "z"

    def __post_init__(self) -> None:
        self.num = _coerce(self.field, self.num)
        self.den = _coerce(self.field, self.den)
        if not self.den:
            raise ValueError("zero denominator")
        g = up.gcd(self.num, self.den) if self.num else [self.field.one()]
        if len(g) > 1:
            raise ValueError("numerator and denominator share a factor")
        if self.degree == 0:
            raise ValueError("map is constant")

    @property
    def degree(self) -> int:
        return max(up.degree(self.num), up.degree(self.den))

    @classmethod
    def from_json(cls, obj: dict) -> "RationalMap":
        field = field_from_json(obj.get("field"))
        var = obj.get("var", "z")
        return cls(field, _poly_from(obj["num"], field, var), _poly_from(obj.get("den", "1"), field, var), var)


def parse_point(field: Any, text: Any) -> Any:
    if isinstance(text, str) and text.strip().lower() in ("inf", "infinity", "oo"):
        return INF
    if isinstance(text, str):
        return parse(text, field, ()).constant_term()
    return field(text)


def ramification_profile(w: RationalMap, c: Any) -> tuple[int, ...]:
    """Multiplicities of the points of w^-1(c), including z = infinity."""
    d = w.degree
    if c == INF:
        poly = w.den
    else:
        poly = up.sub(w.num, up.scale(w.den, w.field(c)))
    poly = up.strip(poly)
    if not poly:
        raise ValueError("the fibre is the whole line")
    parts: list[int] = []
    for mult, count in up.squarefree_multiplicity_profile(poly):
        parts.extend([mult] * count)
    at_inf = d - up.degree(poly)
    if at_inf > 0:
        parts.append(at_inf)
    out = tuple(sorted(parts, reverse=True))
    assert sum(out) == d
    return out


def is_galois_profile(profile: Sequence[int]) -> bool:
    return len(set(profile)) == 1


def galois_consistency(w: RationalMap, orders: Sequence[int], degree: int | None = None) -> dict:
    """Profiles over 0, 1, inf of the form (e, ..., e) whose exponents match.

    The ramification exponents must equal the orders of the three branch
    permutations as a multiset (the coordinate on the target is only fixed
    up to permuting 0, 1 and infinity).
    """
    profs = {str(k): ramification_profile(w, k if k == INF else w.field(k)) for k in (0, 1, INF)}
    exps = sorted(p[0] for p in profs.values())
    galois = all(is_galois_profile(p) for p in profs.values())
    ok = galois and exps == sorted(orders) and (degree is None or w.degree == degree)
    return {"degree": w.degree, "profiles": {k: list(v) for k, v in profs.items()},
            "galois": galois, "exponents": exps, "expected_orders": sorted(orders), "pass": ok}


# -- Weierstrass models -------------------------------------------------------------------

@dataclass
class WeierstrassModel:
    """y^2 = x^3 + A(s) x + B(s)."""

    field: Any
    a: list
    b: list
    var: str = "s"

    def __post_init__(self) -> None:
        self.a = _coerce(self.field, self.a)
        self.b = _coerce(self.field, self.b)
        if not self.discriminant():
            raise ValueError("discriminant vanishes identically")

    @classmethod
    def from_json(cls, obj: dict) -> "WeierstrassModel":
        field = field_from_json(obj.get("field"))
        var = obj.get("var", "s")
        return cls(field, _poly_from(obj["A"], field, var), _poly_from(obj["B"], field, var), var)

    def over(self, field: Any) -> "WeierstrassModel":
        return WeierstrassModel(field, [field(c) for c in self.a], [field(c) for c in self.b], self.var)

    def discriminant(self) -> list:
        a3 = up.scale(up.power(self.a, 3), 4)
        b2 = up.scale(up.power(self.b, 2), 27)
        return up.scale(up.add(a3, b2), -16)

    @property
    def chi(self) -> int:
        """Least k with deg A <= 4k and deg B <= 6k."""
        k = 1
        while up.degree(self.a) > 4 * k or up.degree(self.b) > 6 * k:
            k += 1
        return k


def _fmt_poly(field: Any, p: Sequence, var: str) -> str:
    return str(MultiPoly.from_univariate(field, (var,), 0, p))


def _coprime(a: Sequence, q: Sequence) -> bool:
    return bool(a) and len(up.gcd(a, q)) == 1


def weierstrass_fiber_orders(m: WeierstrassModel) -> list[dict]:
    """Places with ord(Delta) > 0, with a multiplicative flag."""
    delta = m.discriminant()
    out = []
    for mult, q in up.squarefree_decomposition(delta):
        rest = q
        if m.field == QQ:
            for r in up.rational_roots(q):
                lin = [-r, Fraction(1)]
                rest, _ = up.divmod_poly(rest, lin)
                out.append({"place": f"{m.var}={r}", "degree": 1, "ord": mult,
                            "multiplicative": _coprime(m.a, lin)})
        if up.degree(rest) > 0:
            out.append({"place": f"roots of {_fmt_poly(m.field, rest, m.var)}",
                        "degree": up.degree(rest), "ord": mult, "multiplicative": _coprime(m.a, rest)})
    ord_inf = 12 * m.chi - up.degree(delta)
    if ord_inf > 0:
        out.append({"place": f"{m.var}=inf", "degree": 1, "ord": ord_inf,
                    "multiplicative": up.degree(m.a) == 4 * m.chi})
    return out


def ord_at(m: WeierstrassModel, point: Any) -> int:
    """Order of vanishing of Delta at a finite point of the base field."""
    delta = m.discriminant()
    if point == INF:
        return 12 * m.chi - up.degree(delta)
    lin = [-m.field(point), m.field.one()]
    k = 0
    while True:
        q, r = up.divmod_poly(delta, lin)
        if up.strip(r):
            return k
        delta = q
        k += 1


def _homog_compose(p: Sequence, weight: int, num: Sequence, den: Sequence) -> list:
    """den^weight * p(num/den) as a polynomial."""
    total: list = []
    for i, c in enumerate(p):
        term = up.scale(up.mul(up.power(num, i), up.power(den, weight - i)), c)
        total = up.add(total, term)
    return up.strip(total)


def verify_base_change_automorphism(m: WeierstrassModel, sigma: Sequence, u2: tuple[Sequence, Sequence]) -> dict:
    """Check A(sigma(s)) = u^4 A(s) and B(sigma(s)) = u^6 B(s).

    ``sigma`` is (a, b, c, d) for s -> (a s + b)/(c s + d) and ``u2`` is
    the pair (numerator, denominator) of u(s)^2.  Both sides are cleared of
    denominators before comparison.
    """
    f = m.field
    a, b, c, d = (f(x) for x in sigma)
    if a * d - b * c == 0:
        raise ValueError("fractional linear map is degenerate")
    num = up.strip([b, a])
    den = up.strip([d, c])
    un = _coerce(f, u2[0])
    ud = _coerce(f, u2[1])
    if not un or not ud:
        raise ValueError("u must be a nonzero rational function")
    k = m.chi
    lhs_a = up.mul(_homog_compose(m.a, 4 * k, num, den), up.power(ud, 2))
    rhs_a = up.mul(up.mul(up.power(un, 2), m.a), up.power(den, 4 * k))
    lhs_b = up.mul(_homog_compose(m.b, 6 * k, num, den), up.power(ud, 3))
    rhs_b = up.mul(up.mul(up.power(un, 3), m.b), up.power(den, 6 * k))
    ok_a = up.strip(up.sub(lhs_a, rhs_a)) == []
    ok_b = up.strip(up.sub(lhs_b, rhs_b)) == []
    return {"A_identity": ok_a, "B_identity": ok_b, "pass": ok_a and ok_b}


def fractional_linear_exists(field: Any, pairs: Sequence[tuple[Any, Any]]) -> tuple | None:
    """A map s -> (a s + b)/(c s + d) with ad - bc != 0 sending each p to q, or None."""
    srcs = [p for p, _ in pairs]
    if len(set(map(str, srcs))) != len(srcs):
        raise ValueError("constraint sources must be distinct")
    zero, one = field.zero(), field.one()
    rows = []
    for p, q in pairs:
        if p == INF and q == INF:
            rows.append([zero, zero, one, zero])
        elif p == INF:
            rows.append([one, zero, -field(q), zero])
        elif q == INF:
            rows.append([zero, zero, field(p), one])
        else:
            p, q = field(p), field(q)
            rows.append([p, one, -q * p, -q])
    ker = mx.kernel(rows) if rows else [[one if i == j else zero for i in range(4)] for j in range(4)]
    ker = [[field(x) for x in v] for v in ker]

    def det(v: Sequence) -> Any:
        return v[0] * v[3] - v[1] * v[2]

    for v in ker:
        if det(v) != 0:
            return tuple(v)
    for i in range(len(ker)):
        for j in range(i + 1, len(ker)):
            v = [x + y for x, y in zip(ker[i], ker[j])]
            if det(v) != 0:
                return tuple(v)
    return None


def apply_fractional_linear(field: Any, m: Sequence, p: Any) -> Any:
    a, b, c, d = m
    if p == INF:
        return INF if c == 0 else a / c
    den = c * field(p) + d
    if den == 0:
        return INF
    return (a * field(p) + b) / den

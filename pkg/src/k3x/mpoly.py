"""Sparse multivariate polynomials over QQ or a :class:`NumberField`."""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Any, Iterable, Mapping, Sequence

from .numfield import QQ, NFElement, field_from_json
from .rational import Q

Exp = tuple


class MultiPoly:
    """Polynomial stored as ``{exponent tuple: nonzero coefficient}``.

    Printing and iteration use graded lexicographic order, highest first.
    """

    __slots__ = ("field", "names", "terms")

    def __init__(self, field: Any, names: Sequence[str], terms: Mapping[Exp, Any] | None = None):
        self.field = field
        self.names = tuple(names)
        out = {}
        n = len(self.names)
        for e, c in (terms or {}).items():
            if len(e) != n:
                raise ValueError("exponent length does not match variable count")
            c = field(c)
            if c != 0:
                out[tuple(e)] = c
        self.terms = out

    # -- constructors -------------------------------------------------
    @classmethod
    def const(cls, field: Any, names: Sequence[str], c: Any) -> "MultiPoly":
        return cls(field, names, {(0,) * len(names): c})

    @classmethod
    def var(cls, field: Any, names: Sequence[str], i: int) -> "MultiPoly":
        e = [0] * len(names)
        e[i] = 1
        return cls(field, names, {tuple(e): 1})

    @classmethod
    def gens(cls, field: Any, names: Sequence[str]) -> list["MultiPoly"]:
        return [cls.var(field, names, i) for i in range(len(names))]

    def _new(self, terms: dict) -> "MultiPoly":
        p = MultiPoly.__new__(MultiPoly)
        p.field = self.field
        p.names = self.names
        p.terms = {e: c for e, c in terms.items() if c != 0}
        return p

    def _wrap(self, other: Any) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.names != self.names:
                raise ValueError("variable names differ")
            if other.field != self.field:
                return other.change_field(self.field) if self.field != QQ else NotImplemented
            return other
        return MultiPoly.const(self.field, self.names, self.field(other))

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other: Any) -> "MultiPoly":
        o = self._wrap(other)
        t = dict(self.terms)
        zero = self.field.zero()
        for e, c in o.terms.items():
            t[e] = t.get(e, zero) + c
        return self._new(t)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return self._new({e: -c for e, c in self.terms.items()})

    def __sub__(self, other: Any) -> "MultiPoly":
        return self + (-self._wrap(other))

    def __rsub__(self, other: Any) -> "MultiPoly":
        return self._wrap(other) - self

    def __mul__(self, other: Any) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            c = self.field(other)
            return self._new({e: a * c for e, a in self.terms.items()})
        o = self._wrap(other)
        t: dict = {}
        zero = self.field.zero()
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, zero) + c1 * c2
        return self._new(t)

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if not other.is_constant():
                raise ValueError("only division by constants is supported")
            other = other.constant_term()
        inv = self.field.one() / self.field(other)
        return self * inv

    def __pow__(self, e: int) -> "MultiPoly":
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = MultiPoly.const(self.field, self.names, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, MultiPoly):
            if other.names != self.names:
                return False
            return self.terms == other.terms
        try:
            return self == self._wrap(other)
        except (TypeError, ValueError):
            return False

    def __hash__(self) -> int:
        return hash((self.names, frozenset((e, str(c)) for e, c in self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # -- structure ----------------------------------------------------
    def nvars(self) -> int:
        return len(self.names)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def low_degree(self) -> int:
        return min((sum(e) for e in self.terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_term(self) -> Any:
        return self.terms.get((0,) * self.nvars(), self.field.zero())

    def is_homogeneous(self, d: int | None = None) -> bool:
        degs = {sum(e) for e in self.terms}
        if not degs:
            return True
        if len(degs) != 1:
            return False
        return d is None or degs == {d}

    def homogeneous_part(self, d: int) -> "MultiPoly":
        return self._new({e: c for e, c in self.terms.items() if sum(e) == d})

    def truncate(self, n: int) -> "MultiPoly":
        """Drop all terms of total degree >= n."""
        return self._new({e: c for e, c in self.terms.items() if sum(e) < n})

    def sorted_terms(self) -> list[tuple[Exp, Any]]:
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def coefficient(self, e: Sequence[int]) -> Any:
        return self.terms.get(tuple(e), self.field.zero())

    def diff(self, i: int) -> "MultiPoly":
        t = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                t[tuple(ne)] = c * e[i]
        return self._new(t)

    def gradient(self) -> list["MultiPoly"]:
        return [self.diff(i) for i in range(self.nvars())]

    def change_field(self, field: Any) -> "MultiPoly":
        return MultiPoly(field, self.names, {e: field(c) for e, c in self.terms.items()})

    def rename(self, names: Sequence[str]) -> "MultiPoly":
        return MultiPoly(self.field, names, self.terms)

    def evaluate(self, point: Sequence[Any]) -> Any:
        acc = self.field.zero()
        pts = [self.field(p) for p in point]
        for e, c in self.terms.items():
            term = c
            for p, k in zip(pts, e):
                if k:
                    term = term * p ** k
            acc = acc + term
        return acc

    def subs(self, images: Sequence[Any], names: Sequence[str] | None = None) -> "MultiPoly":
        """Substitute polynomial images for every variable.

        ``images[i]`` replaces variable i; images are MultiPolys in the
        variables ``names`` (default: the images' own) or scalars.
        """
        if names is None:
            names = next((im.names for im in images if isinstance(im, MultiPoly)), self.names)
        field = self.field
        for im in images:
            if isinstance(im, MultiPoly) and im.field != field and field == QQ:
                field = im.field
        ims = [im if isinstance(im, MultiPoly) else MultiPoly.const(field, names, im)
               for im in images]
        ims = [im.change_field(field) if im.field != field else im for im in ims]
        powers: list[dict[int, MultiPoly]] = [dict() for _ in ims]

        def pw(i: int, k: int) -> MultiPoly:
            if k not in powers[i]:
                if k == 0:
                    powers[i][k] = MultiPoly.const(field, names, 1)
                elif k == 1:
                    powers[i][k] = ims[i]
                else:
                    half = pw(i, k // 2)
                    sq = half * half
                    powers[i][k] = sq * ims[i] if k % 2 else sq
            return powers[i][k]

        out = MultiPoly(field, names)
        for e, c in self.terms.items():
            term = MultiPoly.const(field, names, field(c))
            for i, k in enumerate(e):
                if k:
                    term = term * pw(i, k)
            out = out + term
        return out

    def dehomogenize(self, i: int) -> "MultiPoly":
        """Set variable i to 1 and drop it."""
        names = self.names[:i] + self.names[i + 1:]
        t: dict = {}
        zero = self.field.zero()
        for e, c in self.terms.items():
            ne = e[:i] + e[i + 1:]
            t[ne] = t.get(ne, zero) + c
        return MultiPoly(self.field, names, t)

    def homogenize(self, name: str, position: int | None = None) -> "MultiPoly":
        d = self.total_degree()
        pos = len(self.names) if position is None else position
        names = self.names[:pos] + (name,) + self.names[pos:]
        t = {}
        for e, c in self.terms.items():
            t[e[:pos] + (d - sum(e),) + e[pos:]] = c
        return MultiPoly(self.field, names, t)

    def divide_by_var_power(self, i: int) -> tuple["MultiPoly", int]:
        """Remove the largest power of variable i dividing the polynomial."""
        if not self.terms:
            return self, 0
        k = min(e[i] for e in self.terms)
        t = {}
        for e, c in self.terms.items():
            ne = list(e)
            ne[i] -= k
            t[tuple(ne)] = c
        return self._new(t), k

    def univariate(self, i: int) -> list:
        """Coefficient list in variable i for a polynomial in that variable only."""
        for e in self.terms:
            if any(k for j, k in enumerate(e) if j != i):
                raise ValueError("polynomial involves other variables")
        d = self.degree_in(i)
        out = [self.field.zero()] * (d + 1)
        for e, c in self.terms.items():
            out[e[i]] = c
        return out

    @classmethod
    def from_univariate(cls, field: Any, names: Sequence[str], i: int, coeffs: Sequence) -> "MultiPoly":
        n = len(names)
        t = {}
        for k, c in enumerate(coeffs):
            e = [0] * n
            e[i] = k
            t[tuple(e)] = c
        return cls(field, names, t)

    # -- serialization ------------------------------------------------
    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mon = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(self.names, e) if k)
            cs = str(c)
            if isinstance(c, NFElement) and len(c.nonzero_terms()) > 1:
                cs = f"({cs})"
            if not mon:
                parts.append(cs)
            elif cs == "1":
                parts.append(mon)
            elif cs == "-1":
                parts.append("-" + mon)
            else:
                parts.append(f"{cs}*{mon}")
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __repr__(self) -> str:
        return f"MultiPoly({self})"

    def to_json(self) -> list:
        from .numfield import _enc

        return [{"exp": list(e), "coeff": _enc(c)} for e, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, data: Iterable[dict], field: Any = QQ,
                  names: Sequence[str] = ("x", "y", "z")) -> "MultiPoly":
        from .numfield import _dec

        t: dict = {}
        for item in data:
            e = tuple(int(k) for k in item["exp"])
            c = _dec(field, item["coeff"])
            t[e] = t.get(e, field.zero()) + c
        return cls(field, names, t)


def field_of(obj: dict) -> Any:
    return field_from_json(obj)


# -- parsing --------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


class ParseError(ValueError):
    pass


def _tokenize(text: str) -> list[tuple[str, str]]:
    out = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        if m.group(1):
            out.append(("num", m.group(1)))
        elif m.group(2):
            out.append(("id", m.group(2)))
        else:
            op = m.group(3)
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


def parse(text: str, field: Any = QQ, names: Sequence[str] = ("x", "y", "z"),
          generator: str = "v") -> MultiPoly:
    """Parse an expression with ``+ - * / ^`` and parentheses.

    Identifiers are the variable names, or ``generator`` for the field
    generator.  Division must be by a constant.
    """
    toks = _tokenize(text)
    pos = 0
    names = tuple(names)

    def peek() -> tuple[str, str] | None:
        return toks[pos] if pos < len(toks) else None

    def take() -> tuple[str, str]:
        nonlocal pos
        if pos >= len(toks):
            raise ParseError("unexpected end of input")
        pos += 1
        return toks[pos - 1]

    def expr() -> MultiPoly:
        acc = term()
        while peek() in (("op", "+"), ("op", "-")):
            op = take()[1]
            rhs = term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term() -> MultiPoly:
        acc = unary()
        while peek() in (("op", "*"), ("op", "/")):
            op = take()[1]
            rhs = unary()
            acc = acc * rhs if op == "*" else acc / rhs
        return acc

    def unary() -> MultiPoly:
        if peek() == ("op", "-"):
            take()
            return -unary()
        if peek() == ("op", "+"):
            take()
            return unary()
        return power()

    def power() -> MultiPoly:
        base = atom()
        if peek() == ("op", "^"):
            take()
            ex = unary()
            if not ex.is_constant():
                raise ParseError("exponent must be a constant")
            k = ex.constant_term()
            k = field(k)
            kq = QQ(k) if field is not QQ else k
            if Fraction(kq).denominator != 1 or kq < 0:
                raise ParseError("exponent must be a non-negative integer")
            return base ** int(kq)
        return base

    def atom() -> MultiPoly:
        kind, val = take()
        if kind == "num":
            return MultiPoly.const(field, names, Q(int(val)))
        if kind == "id":
            if val in names:
                return MultiPoly.var(field, names, names.index(val))
            if val == generator and field is not QQ:
                return MultiPoly.const(field, names, field.gen())
            raise ParseError(f"unknown identifier {val!r}")
        if val == "(":
            inner = expr()
            if take() != ("op", ")"):
                raise ParseError("expected ')'")
            return inner
        raise ParseError(f"unexpected token {val!r}")

    result = expr()
    if pos != len(toks):
        raise ParseError(f"trailing input at token {pos}")
    return result

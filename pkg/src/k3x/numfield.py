"""Exact arithmetic in Q and in small algebraic number fields.

A :class:`NumberField` is ``base[v]/(m(v))`` for a monic irreducible
``m``.  The base is normally :data:`QQ`; a relative quadratic extension of
an absolute field is also allowed, which is how conjugate pairs of points
defined over a quadratic extension of a curve's coefficient field are
handled.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Any, Iterable, Sequence

from . import upoly
from .rational import Q, qstr


class NotInvertible(ArithmeticError):
    """Raised when an element shares a factor with the defining polynomial."""

    def __init__(self, factor: list):
        super().__init__("element is a zero divisor")
        self.factor = factor


class RationalField:
    """The field of rationals; elements are plain :class:`Fraction`."""

    degree = 1
    absolute_degree = 1
    base = None
    name = "QQ"

    def __call__(self, x: Any) -> Fraction:
        if isinstance(x, NFElement):
            if not x.is_rational():
                raise ValueError("element is not rational")
            return x.to_rational()
        return Q(x)

    def zero(self) -> Fraction:
        return Fraction(0)

    def one(self) -> Fraction:
        return Fraction(1)

    def contains(self, x: Any) -> bool:
        return isinstance(x, (int, Fraction)) and not isinstance(x, bool)

    def tower(self) -> list:
        return [self]

    def to_json(self) -> dict:
        return {"minpoly": ["0", "1"]}

    def __repr__(self) -> str:
        return "QQ"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("QQ")


QQ = RationalField()


def _check_irreducible(m: list, base: Any) -> None:
    d = len(m) - 1
    if base is QQ:
        if d >= 2 and upoly.rational_roots(m):
            raise ValueError(f"minimal polynomial {m} has a rational root")
        if d == 4 and upoly.has_quadratic_factor(m):
            raise ValueError(f"minimal polynomial {m} splits into quadratics")
        if d > 4:
            raise ValueError("irreducibility test limited to degree 4")
        return
    if d != 2:
        raise ValueError("relative extensions must be quadratic")
    disc = m[1] * m[1] - 4 * m[0]
    if is_square(base, disc):
        raise ValueError("relative quadratic polynomial is reducible")


class NumberField:
    """``base[gen]/(minpoly)`` with ``minpoly`` monic and irreducible."""

    def __new__(cls, minpoly: Sequence, base: Any = None, gen: str | None = None):
        base = QQ if base is None else base
        coeffs = upoly.strip(base(c) for c in minpoly)
        if len(coeffs) == 2 and base is QQ and coeffs[-1] == 1:
            return QQ
        return super().__new__(cls)

    def __init__(self, minpoly: Sequence, base: Any = None, gen: str | None = None):
        base = QQ if base is None else base
        coeffs = upoly.strip(base(c) for c in minpoly)
        if len(coeffs) < 2:
            raise ValueError("minimal polynomial must have positive degree")
        if coeffs[-1] != 1:
            raise ValueError("minimal polynomial must be monic; use NumberField.monic")
        if len(coeffs) - 1 > 4:
            raise ValueError("field degree above 4 is not supported")
        _check_irreducible(coeffs, base)
        self.base = base
        self.minpoly = coeffs
        self.degree = len(coeffs) - 1
        self.absolute_degree = self.degree * base.absolute_degree
        self.gen_name = gen or ("v" if base is QQ else "w")
        self.name = f"{base.name}[{self.gen_name}]/({self._mp_str()})"

    @classmethod
    def monic(cls, poly: Sequence, base: Any = None, gen: str | None = None):
        """Field defined by a possibly non-monic polynomial, same generator."""
        base = QQ if base is None else base
        return cls(upoly.monic([base(c) for c in poly]), base, gen)

    def _mp_str(self) -> str:
        return _poly_str(self.minpoly, self.gen_name)

    def __call__(self, x: Any) -> "NFElement":
        if isinstance(x, NFElement):
            if x.field == self:
                return x
            chain = self.tower()
            if x.field in chain:
                return self.lift(x)
            if x.is_rational():
                return self.lift(x.to_rational())
            raise ValueError("cannot coerce between unrelated fields")
        if isinstance(x, (list, tuple)):
            return NFElement(self, list(x))
        return self.lift(Q(x))

    def lift(self, x: Any) -> "NFElement":
        """Embed an element of a subfield (or Q) as a constant."""
        b = self.base(x)
        return NFElement(self, [b])

    def gen(self) -> "NFElement":
        return NFElement(self, [self.base.zero(), self.base.one()])

    def zero(self) -> "NFElement":
        return NFElement(self, [])

    def one(self) -> "NFElement":
        return NFElement(self, [self.base.one()])

    def tower(self) -> list:
        return [self] + self.base.tower()

    def contains(self, x: Any) -> bool:
        return isinstance(x, NFElement) and x.field == self

    def to_json(self) -> dict:
        out: dict = {"minpoly": [_enc(c) for c in self.minpoly]}
        if self.base is not QQ:
            out["base"] = self.base.to_json()
        return out

    @classmethod
    def from_json(cls, obj: dict):
        base = QQ
        if "base" in obj:
            base = cls.from_json(obj["base"])
        return cls.monic([_dec(base, c) for c in obj["minpoly"]], base)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, NumberField) and self.base == other.base
                and self.minpoly == other.minpoly)

    def __hash__(self) -> int:
        return hash((tuple(str(c) for c in self.minpoly), hash(self.base)))

    def __repr__(self) -> str:
        return f"NumberField({self.name})"


def field_from_json(obj: dict | None):
    if not obj:
        return QQ
    mp = obj.get("minpoly", ["0", "1"])
    if len(mp) == 2 and "base" not in obj:
        return QQ
    return NumberField.from_json(obj)


def _enc(c: Any) -> Any:
    if isinstance(c, NFElement):
        return [_enc(x) for x in c.coeffs]
    return qstr(c)


def _dec(base: Any, c: Any) -> Any:
    if isinstance(c, list):
        return base(c and [_dec(base.base, x) for x in c])
    return base(c)


def _poly_str(coeffs: Sequence, var: str) -> str:
    parts = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        if isinstance(c, NFElement) and len(c.nonzero_terms()) > 1:
            cs = f"({c})"
        else:
            cs = str(c)
        mon = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if not mon:
            parts.append(cs)
        elif cs == "1":
            parts.append(mon)
        elif cs == "-1":
            parts.append("-" + mon)
        else:
            parts.append(f"{cs}*{mon}")
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


class NFElement:
    """Element of a :class:`NumberField`, stored as reduced coefficients."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: NumberField, coeffs: Iterable[Any]):
        base = field.base
        cs = upoly.strip(base(c) for c in coeffs)
        if len(cs) > field.degree:
            _, cs = upoly.divmod_poly(cs, field.minpoly)
        self.field = field
        self.coeffs = tuple(cs)

    # -- coercion -----------------------------------------------------
    def _coerce(self, other: Any) -> "NFElement | None":
        if isinstance(other, NFElement):
            if other.field == self.field:
                return other
            if other.field in self.field.base.tower():
                return self.field.lift(other)
            return None
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.field.lift(other)
        return None

    def is_rational(self) -> bool:
        if len(self.coeffs) > 1:
            return False
        if not self.coeffs:
            return True
        c = self.coeffs[0]
        return c.is_rational() if isinstance(c, NFElement) else True

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        if not self.coeffs:
            return Fraction(0)
        c = self.coeffs[0]
        return c.to_rational() if isinstance(c, NFElement) else Fraction(c)

    def nonzero_terms(self) -> list:
        return [i for i, c in enumerate(self.coeffs) if c != 0]

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other: Any) -> "NFElement":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return NFElement(self.field, upoly.add(self.coeffs, o.coeffs))

    __radd__ = __add__

    def __neg__(self) -> "NFElement":
        return NFElement(self.field, [-c for c in self.coeffs])

    def __sub__(self, other: Any) -> "NFElement":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return NFElement(self.field, upoly.sub(self.coeffs, o.coeffs))

    def __rsub__(self, other: Any) -> "NFElement":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other: Any) -> "NFElement":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if len(o.coeffs) == 1:
            c = o.coeffs[0]
            return NFElement(self.field, [a * c for a in self.coeffs])
        return NFElement(self.field, upoly.mul(self.coeffs, o.coeffs))

    __rmul__ = __mul__

    def inverse(self) -> "NFElement":
        if not self.coeffs:
            raise ZeroDivisionError("inverse of zero")
        if len(self.coeffs) == 1:
            return NFElement(self.field, [self.field.base.one() / self.coeffs[0]])
        g, s, _ = upoly.ext_gcd(list(self.coeffs), self.field.minpoly)
        if len(g) != 1:
            raise NotInvertible(g)
        return NFElement(self.field, s)

    def __truediv__(self, other: Any) -> "NFElement":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: Any) -> "NFElement":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int) -> "NFElement":
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # -- comparison ---------------------------------------------------
    def __eq__(self, other: object) -> bool:
        o = self._coerce(other)
        if o is None:
            if isinstance(other, NFElement) and self.field in other.field.base.tower():
                return other == self
            return NotImplemented
        return self.coeffs == o.coeffs

    def __ne__(self, other: object) -> bool:
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.to_rational())
        return hash((self.field, self.coeffs))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    # -- invariants ---------------------------------------------------
    def multiplication_matrix(self) -> list[list]:
        """Matrix (over the base field) of x -> self*x on the power basis."""
        n = self.field.degree
        cols = []
        g = self.field.gen()
        cur = self
        for _ in range(n):
            col = list(cur.coeffs) + [self.field.base.zero()] * (n - len(cur.coeffs))
            cols.append(col)
            cur = cur * g
        return [[cols[j][i] for j in range(n)] for i in range(n)]

    def charpoly(self) -> list:
        """Characteristic polynomial over the base field (Faddeev-LeVerrier)."""
        return charpoly(self.multiplication_matrix(), self.field.base)

    def norm(self) -> Any:
        cp = self.charpoly()
        return cp[0] if self.field.degree % 2 == 0 else -cp[0]

    def trace(self) -> Any:
        return -self.charpoly()[-2]

    def to_json(self) -> dict:
        return {"field": self.field.to_json(), "coeffs": [_enc(c) for c in self.coeffs]}

    def __str__(self) -> str:
        return _poly_str(self.coeffs, self.field.gen_name)

    def __repr__(self) -> str:
        return f"NFElement({self})"


def charpoly(mat: Sequence[Sequence], base: Any) -> list:
    n = len(mat)
    one = base.one()
    zero = base.zero()
    ident = [[one if i == j else zero for j in range(n)] for i in range(n)]
    coeffs = [zero] * (n + 1)
    coeffs[n] = one
    mk = [[zero] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        prev = mk
        mk = [[sum((mat[i][l] * prev[l][j] for l in range(n)), zero)
               + coeffs[n - k + 1] * ident[i][j] for j in range(n)] for i in range(n)]
        am = [[sum((mat[i][l] * mk[l][j] for l in range(n)), zero) for j in range(n)]
              for i in range(n)]
        tr = sum((am[i][i] for i in range(n)), zero)
        coeffs[n - k] = -tr / k
    return coeffs


def is_square(field: Any, x: Any) -> bool:
    return sqrt(field, x) is not None


def sqrt(field: Any, x: Any) -> Any:
    """A square root of x inside ``field``, or None if there is none."""
    if field is QQ:
        return upoly.rational_sqrt(Q(x))
    x = field(x)
    if x == 0:
        return field.zero()
    if field.base is not QQ:
        raise NotImplementedError("square roots only in absolute fields")
    n = field.degree
    if x.is_rational():
        r = x.to_rational()
        s = upoly.rational_sqrt(r)
        if s is not None:
            return field(s)
        if n % 2 == 1:
            return None
    if n == 2:
        return _sqrt_deg2(field, x)
    if n == 3:
        return _sqrt_deg3(field, x)
    return _sqrt_by_roots(field, x)


def _sqrt_deg2(field: NumberField, x: NFElement) -> Any:
    cands = []
    if x.is_rational():
        # x = D * r^2 with Q(sqrt D) = field
        g = field.gen()
        m1 = field.minpoly[1]
        root_d = 2 * g + m1  # squares to the discriminant of the minpoly
        dsc = m1 * m1 - 4 * field.minpoly[0]
        s = upoly.rational_sqrt(x.to_rational() / dsc)
        if s is not None:
            cands.append(root_d * s)
    else:
        cp = x.charpoly()
        m1, m0 = cp[1], cp[0]
        for b in _pm(upoly.rational_sqrt(m0)):
            a = upoly.rational_sqrt(2 * b - m1)
            if a:
                cands.append(-(x + b) / a)
    for e in cands:
        if e * e == x:
            return e
    return None


def _sqrt_deg3(field: NumberField, x: NFElement) -> Any:
    cp = x.charpoly()
    m2, m1, m0 = cp[2], cp[1], cp[0]
    for c in _pm(upoly.rational_sqrt(-m0)):
        quartic = [m2 * m2 - 4 * m1, -8 * c, 2 * m2, Fraction(0), Fraction(1)]
        for a in upoly.rational_roots(quartic):
            b = (m2 + a * a) / 2
            den = x + b
            if den == 0:
                continue
            e = -(a * x + c) / den
            if e * e == x:
                return e
    return None


def _sqrt_by_roots(field: NumberField, x: NFElement) -> Any:
    raise NotImplementedError("square roots in quartic fields are not needed")


def _pm(r: Any) -> list:
    if r is None:
        return []
    return [r] if r == 0 else [r, -r]

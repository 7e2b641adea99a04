"""Dense univariate polynomials over the rationals."""

import re
from fractions import Fraction
from math import lcm

from ..errors import ParseError

MAX_PUBLIC_DEGREE = 3


class PolyQ:
    """Immutable polynomial with ``Fraction`` coefficients, lowest degree first.

    The constructor accepts any degree since products are formed internally;
    :func:`parse_poly` and :meth:`cubic` are the public entry points and they
    enforce the degree cap.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def cubic(cls, a, b, c):
        """x^3 + a x^2 + b x + c."""
        return cls((c, b, a, 1))

    @classmethod
    def x(cls):
        return cls((0, 1))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def lead(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self):
        return not self.coeffs

    def is_monic(self):
        return self.lead == 1

    def is_integral(self):
        return all(c.denominator == 1 for c in self.coeffs)

    def coeff(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def monic(self):
        if self.is_zero():
            return self
        lc = self.lead
        return PolyQ(c / lc for c in self.coeffs)

    def __call__(self, t):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def derivative(self):
        return PolyQ(i * c for i, c in enumerate(self.coeffs) if i)

    def __neg__(self):
        return PolyQ(-c for c in self.coeffs)

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return PolyQ(self.coeff(i) + other.coeff(i) for i in range(n))

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return PolyQ()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return PolyQ(out)

    __rmul__ = __mul__

    def __divmod__(self, other):
        other = _as_poly(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        lc = other.lead
        for i in range(len(rem) - 1, dq - 1, -1):
            q = rem[i] / lc
            if q:
                quot[i - dq] = q
                for j, b in enumerate(other.coeffs):
                    rem[i - dq + j] -= q * b
        return PolyQ(quot), PolyQ(rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = PolyQ((other,))
        if not isinstance(other, PolyQ):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"PolyQ({self})"

    def __str__(self):
        return format_poly(self)

    def integer_scaled(self):
        """Primitive integer coefficient list proportional to self."""
        den = lcm(*(c.denominator for c in self.coeffs)) if self.coeffs else 1
        return [int(c * den) for c in self.coeffs]


def _as_poly(v):
    return v if isinstance(v, PolyQ) else PolyQ((v,))


def poly_gcd(a, b):
    """Monic gcd (the zero polynomial if both inputs are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a, b):
    """Return (g, s, t) with s*a + t*b = g, g monic."""
    r0, r1 = a, b
    s0, s1 = PolyQ((1,)), PolyQ()
    t0, t1 = PolyQ(), PolyQ((1,))
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    lc = r0.lead
    return r0.monic(), s0 * (1 / lc), t0 * (1 / lc)


def format_poly(p, var="x"):
    if p.is_zero():
        return "0"
    parts = []
    for i in range(p.degree, -1, -1):
        c = p.coeffs[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if mag == 1 else f"{mag}{mono}" if mag.denominator == 1 else f"({mag}){mono}"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        out += sign + body
    return out


_TERM = re.compile(r"\s*([+-])?\s*(\d+(?:/\d+)?)?\s*(\*?\s*x(?:\s*\^\s*(\d+))?)?\s*")


def parse_poly(text, max_degree=MAX_PUBLIC_DEGREE):
    """Parse a polynomial.

    Two spellings are accepted: comma separated integers ``"a,b,c"`` meaning
    x^3 + a x^2 + b x + c (a leading ``1,`` may be included), or a display
    string such as ``"x^3+2x^2+3x-1"``.
    """
    s = text.strip()
    if not s:
        raise ParseError("empty polynomial", text, 0)
    if "x" not in s:
        items = [t.strip() for t in s.split(",")]
        vals = []
        pos = 0
        for t in items:
            try:
                vals.append(int(t))
            except ValueError:
                raise ParseError(f"not an integer: {t!r}", text, pos) from None
            pos += len(t) + 1
        if len(vals) == 4:
            if vals[0] != 1:
                raise ParseError("four coefficients given but leading one is not 1", text, 0)
            vals = vals[1:]
        if len(vals) != 3:
            raise ParseError("expected three coefficients a,b,c for x^3+ax^2+bx+c", text, 0)
        a, b, c = vals
        return PolyQ.cubic(a, b, c)

    coeffs = {}
    pos = 0
    compact = s.replace(" ", "")
    while pos < len(compact):
        m = _TERM.match(compact, pos)
        if not m or m.end() == pos or not (m.group(2) or m.group(3)):
            raise ParseError("unexpected character", text, pos)
        sign = -1 if m.group(1) == "-" else 1
        if m.group(1) is None and pos != 0:
            raise ParseError("missing sign between terms", text, pos)
        c = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        if m.group(3):
            deg = int(m.group(4)) if m.group(4) else 1
        else:
            deg = 0
        coeffs[deg] = coeffs.get(deg, 0) + sign * c
        pos = m.end()
    deg = max(coeffs)
    p = PolyQ(coeffs.get(i, 0) for i in range(deg + 1))
    if p.degree > max_degree:
        raise ParseError(f"degree {p.degree} exceeds the cap of {max_degree}", text, 0)
    return p

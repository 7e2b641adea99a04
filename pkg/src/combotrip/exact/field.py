"""Arithmetic in Q[x]/(f) for a cubic f with a designated real root.

Elements are coefficient triples (c0, c1, c2) standing for c0 + c1 a + c2 a^2,
where ``a`` is the real root of f pinned by the field's isolating interval.
Real comparisons are decided exactly: a gcd test catches zeros, anything else
is separated from zero by refining the root interval.
"""

import threading
from fractions import Fraction
from math import isqrt

from ..errors import DivByZero, FieldMismatch, Reducible
from .poly import PolyQ, format_poly, poly_gcd, poly_xgcd
from .roots import (
    IsolatingInterval,
    count_roots,
    eval_range,
    isolate_real_roots,
    refine,
    roots_in_open_interval,
    root_bound,
    sturm_sequence,
)


def _divisors(n):
    n = abs(n)
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
    return small + large[::-1]


def rational_roots(p):
    """All rational roots of a nonzero polynomial (rational root theorem)."""
    ints = p.integer_scaled()
    roots = set()
    # strip factors of x
    k = 0
    while k < len(ints) and ints[k] == 0:
        k += 1
    if k:
        roots.add(Fraction(0))
    ints = ints[k:]
    if len(ints) <= 1:
        return roots
    for r in _divisors(ints[0]):
        for s in _divisors(ints[-1]):
            for cand in (Fraction(r, s), Fraction(-r, s)):
                if p(cand) == 0:
                    roots.add(cand)
    return roots


def is_irreducible_cubic(p):
    """True iff the cubic p has no rational root (equivalent for degree 3)."""
    if p.degree != 3:
        raise ValueError(f"expected a cubic, got degree {p.degree}")
    return not rational_roots(p)


def discriminant(p):
    """Polynomial discriminant of a cubic a x^3 + b x^2 + c x + d."""
    if p.degree != 3:
        raise ValueError(f"expected a cubic, got degree {p.degree}")
    d, c, b, a = p.coeffs
    return b * b * c * c - 4 * a * c**3 - 4 * b**3 * d - 27 * a * a * d * d + 18 * a * b * c * d


class CubicField:
    """Q[x]/(f) for monic cubic f, with one real root designated.

    With ``require_irreducible=False`` the same machinery serves as the
    quotient ring for a reducible (squarefree) f; division then only works
    for units of the ring.
    """

    def __init__(self, min_poly, root_interval=None, *, require_irreducible=True):
        f = min_poly if isinstance(min_poly, PolyQ) else PolyQ(min_poly)
        if f.degree != 3 or not f.is_monic():
            raise ValueError(f"minimal polynomial must be a monic cubic, got {f}")
        self.irreducible = is_irreducible_cubic(f)
        if require_irreducible and not self.irreducible:
            raise Reducible(f"{f} has a rational root {', '.join(map(str, sorted(rational_roots(f))))}")
        self.min_poly = f
        roots = isolate_real_roots(f)
        if root_interval is None:
            if len(roots) != 1:
                raise ValueError(f"{f} has {len(roots)} real roots; pass an isolating interval")
            root_interval = roots[0]
        iv = IsolatingInterval(Fraction(root_interval.lo), Fraction(root_interval.hi))
        seq = sturm_sequence(f)
        if not iv.lo < iv.hi or f(iv.lo) == 0 or f(iv.hi) == 0 or count_roots(seq, iv.lo, iv.hi) != 1:
            raise ValueError(f"{iv} does not isolate a root of {f}")
        self._interval = iv
        self._lock = threading.Lock()
        self.root_index = count_roots(seq, -root_bound(f), iv.lo)
        self.key = (f.coeffs, self.root_index)
        self.discriminant = discriminant(f)
        a0, a1, a2 = f.coeffs[:3]
        self._x3 = (-a0, -a1, -a2)
        self._x4 = (a2 * a0, a2 * a1 - a0, a2 * a2 - a1)

    @classmethod
    def roots_in(cls, poly, lo=0, hi=1, **kw):
        """One field per real root of poly in the open interval (lo, hi)."""
        f = poly if isinstance(poly, PolyQ) else PolyQ(poly)
        return [cls(f, iv, **kw) for iv in roots_in_open_interval(f, lo, hi)]

    @property
    def interval(self):
        return self._interval

    def refine_to(self, width):
        cur = self._interval
        if cur.width <= width:
            return cur
        new = refine(cur, self.min_poly, Fraction(width))
        with self._lock:
            if new.width < self._interval.width:
                self._interval = new
            return self._interval

    def _halve(self):
        cur = self._interval
        return self.refine_to(cur.width / 2)

    def __call__(self, c0=0, c1=0, c2=0):
        return FieldElement(self, (c0, c1, c2))

    def element_from_poly(self, p):
        r = p % self.min_poly
        return FieldElement(self, [r.coeff(i) for i in range(3)])

    @property
    def gen(self):
        return FieldElement(self, (0, 1, 0))

    @property
    def one(self):
        return FieldElement(self, (1, 0, 0))

    @property
    def zero(self):
        return FieldElement(self, (0, 0, 0))

    def __eq__(self, other):
        return isinstance(other, CubicField) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"CubicField({self.min_poly}, root #{self.root_index} in {self._interval})"


class FieldElement:
    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        c = tuple(Fraction(v) for v in coeffs)
        if len(c) != 3:
            raise ValueError("field elements carry exactly three coefficients")
        self.coeffs = c

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
            return other.coeffs
        if isinstance(other, (int, Fraction)):
            return (Fraction(other), Fraction(0), Fraction(0))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, [a + b for a, b in zip(self.coeffs, o)])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, [a - b for a, b in zip(self.coeffs, o)])

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, [b - a for a, b in zip(self.coeffs, o)])

    def __neg__(self):
        return FieldElement(self.field, [-a for a in self.coeffs])

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a0, a1, a2 = self.coeffs
        b0, b1, b2 = o
        if not (o[1] or o[2]):
            return FieldElement(self.field, (a0 * b0, a1 * b0, a2 * b0))
        c0 = a0 * b0
        c1 = a0 * b1 + a1 * b0
        c2 = a0 * b2 + a1 * b1 + a2 * b0
        c3 = a1 * b2 + a2 * b1
        c4 = a2 * b2
        x3, x4 = self.field._x3, self.field._x4
        return FieldElement(
            self.field,
            (c0 + c3 * x3[0] + c4 * x4[0], c1 + c3 * x3[1] + c4 * x4[1], c2 + c3 * x3[2] + c4 * x4[2]),
        )

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise DivByZero("inverse of zero")
        if not (self.coeffs[1] or self.coeffs[2]):
            return FieldElement(self.field, (1 / self.coeffs[0], 0, 0))
        g, s, _ = poly_xgcd(self.as_poly(), self.field.min_poly)
        if g.degree != 0:
            raise DivByZero(f"{self} is not invertible in {self.field!r}")
        return self.field.element_from_poly(s)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not any(o):
            raise DivByZero("division by zero")
        if not (o[1] or o[2]):
            return FieldElement(self.field, [a / o[0] for a in self.coeffs])
        return self * FieldElement(self.field, o).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, o) * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_zero(self):
        return not any(self.coeffs)

    def is_rational(self):
        return not (self.coeffs[1] or self.coeffs[2])

    def as_poly(self):
        return PolyQ(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.field.key, self.coeffs))

    def sign(self):
        c0, c1, c2 = self.coeffs
        if not (c1 or c2):
            return (c0 > 0) - (c0 < 0)
        F = self.field
        lo, hi = eval_range(self.coeffs, F.interval.lo, F.interval.hi)
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        if self._vanishes_at_root():
            return 0
        while True:
            iv = F._halve()
            lo, hi = eval_range(self.coeffs, iv.lo, iv.hi)
            if lo > 0:
                return 1
            if hi < 0:
                return -1

    def _vanishes_at_root(self):
        F = self.field
        g = poly_gcd(F.min_poly, self.as_poly())
        if g.degree < 1:
            return False
        iv = F.interval
        # roots of g are roots of f, so none sits on an endpoint
        return count_roots(sturm_sequence(g), iv.lo, iv.hi) == 1

    def enclosure(self, width):
        """Rational (lo, hi) containing the value with hi - lo <= width."""
        F = self.field
        while True:
            iv = F.interval
            lo, hi = eval_range(self.coeffs, iv.lo, iv.hi)
            if hi - lo <= width:
                return lo, hi
            F._halve()

    def __lt__(self, other):
        return sign_of(self - other) < 0

    def __le__(self, other):
        return sign_of(self - other) <= 0

    def __gt__(self, other):
        return sign_of(self - other) > 0

    def __ge__(self, other):
        return sign_of(self - other) >= 0

    def __float__(self):
        lo, hi = self.enclosure(Fraction(1, 2**64))
        return float((lo + hi) / 2)

    def __repr__(self):
        return f"FieldElement({self}; {self.field.min_poly})"

    def __str__(self):
        return format_poly(self.as_poly(), var="a")


def sign_of(e):
    """Exact sign (-1, 0, +1) of a rational or of a field element at its root."""
    if isinstance(e, FieldElement):
        return e.sign()
    return (e > 0) - (e < 0)


def field_arith(a, b, op):
    """Dispatch helper: op is one of 'add', 'sub', 'mul', 'div'."""
    if isinstance(a, FieldElement) and isinstance(b, FieldElement) and a.field != b.field:
        raise FieldMismatch(f"{a.field!r} vs {b.field!r}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b.is_zero() if isinstance(b, FieldElement) else b == 0:
            raise DivByZero("division by zero")
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def floor_ratio(a, b):
    """Largest integer m with m*b <= a, for b > 0 and a >= 0."""
    if sign_of(b) <= 0:
        raise ValueError("floor_ratio needs a positive divisor")
    if not isinstance(a, FieldElement) and not isinstance(b, FieldElement):
        return Fraction(a) // Fraction(b)
    if sign_of(a - b) < 0:
        return 0
    lo, hi = 1, 2
    while sign_of(a - hi * b) >= 0:
        lo, hi = hi, hi * 2
    # invariant: lo*b <= a < hi*b
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if sign_of(a - mid * b) >= 0:
            lo = mid
        else:
            hi = mid
    return lo


def _solve_dependency(vectors, target):
    """Coefficients c with sum c_i vectors[i] = target, or None."""
    n = len(vectors)
    rows = [[vectors[j][i] for j in range(n)] + [target[i]] for i in range(3)]
    piv_cols = []
    r = 0
    for col in range(n):
        pivot = next((i for i in range(r, 3) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][col]
        rows[r] = [v / pv for v in rows[r]]
        for i in range(3):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        piv_cols.append(col)
        r += 1
    if any(rows[i][n] != 0 for i in range(r, 3)):
        return None
    if len(piv_cols) < n:
        return None
    sol = [Fraction(0)] * n
    for i, col in enumerate(piv_cols):
        sol[col] = rows[i][n]
    return sol


def minimal_polynomial(e):
    """Monic polynomial of least degree annihilating e."""
    if not isinstance(e, FieldElement):
        return PolyQ((-Fraction(e), 1))
    powers = [e.field.one.coeffs]
    cur = e.field.one
    for d in range(1, 4):
        cur = cur * e
        sol = _solve_dependency(powers, cur.coeffs)
        if sol is not None:
            return PolyQ([-c for c in sol] + [1])
        powers.append(cur.coeffs)
    raise AssertionError("powers of a cubic field element must be dependent by degree 3")

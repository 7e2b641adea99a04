"""The 216 TRIP maps.

A map is named by a permutation triple (sigma, tau0, tau1).  Its k-th branch
acts on the row vector (1, x, y) through the integer matrix

    D_k = (B F0^-1 F1^-k B^-1)^T,   F0 = sigma A0 tau0,  F1 = sigma A1 tau1,

followed by the projection (z, x, y) -> (x/z, y/z).  The digit of a point is
the smallest k whose image lands back in the triangle 1 >= x >= y > 0.
"""

import itertools
import threading
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor
from typing import Union

from .errors import DegenerateOrbit, NoDigit, ParseError, ProjectionPole
from .exact import FieldElement, sign_of
from .matrix import MatrixZ

DEFAULT_MAX_K = 10_000

Scalar = Union[Fraction, FieldElement]

A0 = MatrixZ(((0, 0, 1), (1, 0, 0), (0, 1, 1)))
A1 = MatrixZ(((1, 0, 1), (0, 1, 0), (0, 0, 1)))
# columns are the triangle's vertices v1 = (1,0,0), v2 = (1,1,0), v3 = (1,1,1)
B = MatrixZ(((1, 1, 1), (0, 1, 1), (0, 0, 1)))
B_INV = B.inverse()


@dataclass(frozen=True)
class Perm3:
    """A permutation of {1, 2, 3} stored as its image tuple."""

    images: tuple

    def __post_init__(self):
        if sorted(self.images) != [1, 2, 3]:
            raise ValueError(f"not a permutation of 1..3: {self.images}")

    def __call__(self, i):
        return self.images[i - 1]

    @property
    def sign(self):
        inversions = sum(1 for i in range(3) for j in range(i + 1, 3) if self.images[i] > self.images[j])
        return -1 if inversions % 2 else 1

    @classmethod
    def parse(cls, text):
        s = text.strip()
        if s in ("e", "()", "id"):
            return cls((1, 2, 3))
        img = [1, 2, 3]
        pos = 0
        seen = set()
        while pos < len(s):
            if s[pos] != "(":
                raise ParseError("expected '(' in cycle notation", text, pos)
            end = s.find(")", pos)
            if end < 0:
                raise ParseError("unclosed cycle", text, pos)
            body = s[pos + 1 : end]
            if not body or any(ch not in "123" for ch in body) or len(set(body)) != len(body):
                raise ParseError("cycle entries must be distinct digits 1-3", text, pos + 1)
            cyc = [int(ch) for ch in body]
            if seen & set(cyc):
                raise ParseError("cycles must be disjoint", text, pos)
            seen |= set(cyc)
            for i, a in enumerate(cyc):
                img[a - 1] = cyc[(i + 1) % len(cyc)]
            pos = end + 1
        return cls(tuple(img))

    def __str__(self):
        out = []
        done = set()
        for start in (1, 2, 3):
            if start in done or self(start) == start:
                continue
            cyc = [start]
            done.add(start)
            nxt = self(start)
            while nxt != start:
                cyc.append(nxt)
                done.add(nxt)
                nxt = self(nxt)
            out.append("(" + "".join(map(str, cyc)) + ")")
        return "".join(out) or "e"


PERMS = tuple(Perm3(p) for p in itertools.permutations((1, 2, 3)))


@dataclass(frozen=True)
class TripMapSpec:
    sigma: Perm3
    tau0: Perm3
    tau1: Perm3

    @classmethod
    def parse(cls, text):
        parts = _split_top_level(text)
        if len(parts) != 3:
            raise ParseError("map spec needs three permutations 'sigma,tau0,tau1'", text, 0)
        return cls(*(Perm3.parse(p) for p in parts))

    def __str__(self):
        return f"{self.sigma},{self.tau0},{self.tau1}"


def _split_top_level(text):
    parts, depth, cur = [], 0, ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    parts.append(cur)
    return [p.strip() for p in parts]


def all_specs():
    return [TripMapSpec(s, t0, t1) for s in PERMS for t0 in PERMS for t1 in PERMS]


def spec(text):
    return TripMapSpec.parse(text)


TRIANGLE = spec("e,e,e")
E_23_E = spec("e,(23),e")
E_132_132 = spec("e,(132),(132)")
S23_23_E = spec("(23),(23),e")
S13_12_E = spec("(13),(12),e")
NAMED_MAPS = (TRIANGLE, E_23_E, E_132_132, S23_23_E, S13_12_E)


def perm_matrix(p):
    """Column permutation matrix: row j carries its 1 in column p(j)."""
    return MatrixZ([[1 if c == p(r) else 0 for c in (1, 2, 3)] for r in (1, 2, 3)])


def build_F(spec):
    s = perm_matrix(spec.sigma)
    return s @ A0 @ perm_matrix(spec.tau0), s @ A1 @ perm_matrix(spec.tau1)


class _DigitMatrices:
    """Per-spec cache of D_0, D_1, ... grown on demand."""

    def __init__(self, spec):
        F0, F1 = build_F(spec)
        self.step = (B @ F1.inverse() @ B_INV).T
        self.mats = [(B @ F0.inverse() @ B_INV).T]
        self.lock = threading.Lock()

    def get(self, k):
        mats = self.mats
        if k < len(mats):
            return mats[k]
        with self.lock:
            while len(self.mats) <= k:
                self.mats.append(self.step @ self.mats[-1])
            return self.mats[k]


_CACHE = {}
_CACHE_LOCK = threading.Lock()


def _matrices(spec):
    m = _CACHE.get(spec)
    if m is None:
        with _CACHE_LOCK:
            m = _CACHE.setdefault(spec, _DigitMatrices(spec))
    return m


def digit_matrix(spec, k):
    """(B F0^-1 F1^-k B^-1)^T, acting on row vectors from the right."""
    if k < 0:
        raise ValueError("digit must be non-negative")
    return _matrices(spec).get(k)


@dataclass(frozen=True)
class TrianglePoint:
    """A point (x, y); both coordinates rational, or both in one cubic field.

    Construction does not validate membership in the triangle because images
    under forced digits may leave it; use :func:`make_point` for a checked
    point.
    """

    x: Scalar
    y: Scalar

    @property
    def is_exact_field(self):
        return isinstance(self.x, FieldElement) or isinstance(self.y, FieldElement)

    @property
    def field(self):
        for c in (self.x, self.y):
            if isinstance(c, FieldElement):
                return c.field
        return None

    def in_triangle(self):
        return sign_of(1 - self.x) >= 0 and sign_of(self.x - self.y) >= 0 and sign_of(self.y) > 0

    def on_boundary(self):
        """True on an edge of the triangle: x = 1, x = y or y = 0."""
        return sign_of(1 - self.x) == 0 or sign_of(self.x - self.y) == 0 or sign_of(self.y) == 0

    def state_key(self):
        """Hashable exact state for cycle detection."""
        F = self.field
        if F is None:
            return ("Q", Fraction(self.x), Fraction(self.y))
        return (F.key, _coeffs(self.x, F), _coeffs(self.y, F))

    def __str__(self):
        return f"({self.x}, {self.y})"


def _coeffs(c, F):
    if isinstance(c, FieldElement):
        return c.coeffs
    return F(c).coeffs


def make_point(x, y):
    if not isinstance(x, FieldElement):
        x = Fraction(x)
    if not isinstance(y, FieldElement):
        y = Fraction(y)
    pt = TrianglePoint(x, y)
    if not pt.in_triangle():
        raise ValueError(f"{pt} is not in the triangle 1 >= x >= y > 0")
    return pt


def parse_rational_point(text):
    parts = text.split(",")
    if len(parts) != 2:
        raise ParseError("point must be 'p/q,p/q'", text, 0)
    vals = []
    pos = 0
    for p in parts:
        try:
            vals.append(Fraction(p.strip()))
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"not an exact rational: {p.strip()!r}", text, pos) from None
        if "." in p or "e" in p.lower():
            raise ParseError("decimal input is not accepted; give p/q", text, pos)
        pos += len(p) + 1
    return make_point(*vals)


def cubic_pair(field, kind="alpha2"):
    """(a, a^2) or (a, a - a^2) for the designated root a of the field."""
    a = field.gen
    if kind in ("alpha2", "alpha,alpha2"):
        return make_point(a, a * a)
    if kind in ("alpha-alpha2", "alpha,alpha-alpha2"):
        return make_point(a, a - a * a)
    raise ValueError(f"unknown pair kind {kind!r}")


# -- digit determination --------------------------------------------------

_IN, _OUT, _EDGE = "in", "out", "edge"
_SCREEN_BITS = 96


def _forms(D):
    """Coefficient triples (on 1, x, y) of z, z - x', x' - y', y' for the image."""
    w = [(D[0, j], D[1, j], D[2, j]) for j in range(3)]
    sub = lambda p, q: (p[0] - q[0], p[1] - q[1], p[2] - q[2])  # noqa: E731
    return w[0], sub(w[0], w[1]), sub(w[1], w[2]), w[2]


def _classify(D, sgn):
    f0, f1, f2, f3 = _forms(D)
    if sgn(f0) <= 0 or sgn(f1) < 0 or sgn(f2) < 0:
        return _OUT
    s3 = sgn(f3)
    if s3 > 0:
        return _IN
    return _EDGE if s3 == 0 else _OUT


def _rational_signer(pt):
    x, y = Fraction(pt.x), Fraction(pt.y)
    q = x.denominator * y.denominator
    v = (q, x.numerator * y.denominator, y.numerator * x.denominator)

    def sgn(f):
        t = f[0] * v[0] + f[1] * v[1] + f[2] * v[2]
        return (t > 0) - (t < 0)

    return sgn


def _enclose_scaled(x, y, bits):
    S = 1 << bits
    xl, xh = x.enclosure(Fraction(1, S))
    yl, yh = y.enclosure(Fraction(1, S))
    return S, floor(xl * S), ceil(xh * S), floor(yl * S), ceil(yh * S)


def _screen(f, box):
    S, xl, xh, yl, yh = box
    a, b, c = f
    lo = a * S + (b * xl if b >= 0 else b * xh) + (c * yl if c >= 0 else c * yh)
    if lo > 0:
        return 1
    hi = a * S + (b * xh if b >= 0 else b * xl) + (c * yh if c >= 0 else c * yl)
    if hi < 0:
        return -1
    return 0


def _field_signer(pt):
    F = pt.field
    x = pt.x if isinstance(pt.x, FieldElement) else F(pt.x)
    y = pt.y if isinstance(pt.y, FieldElement) else F(pt.y)
    boxes = {_SCREEN_BITS: _enclose_scaled(x, y, _SCREEN_BITS)}

    def sgn(f):
        s = _screen(f, boxes[_SCREEN_BITS])
        if s:
            return s
        # near-cancellation: retry with precision sized to the coefficients
        need = 3 * max(abs(c).bit_length() for c in f) + _SCREEN_BITS
        bits = _SCREEN_BITS
        while bits < need:
            bits *= 2
        if bits not in boxes:
            boxes[bits] = _enclose_scaled(x, y, bits)
        s = _screen(f, boxes[bits])
        if s:
            return s
        return sign_of(f[0] + f[1] * x + f[2] * y)

    return sgn


def _signer(pt):
    return _field_signer(pt) if pt.is_exact_field else _rational_signer(pt)


def membership(spec, k, pt):
    """'in' if branch k maps pt into the triangle, 'edge' if onto the excluded y'=0 side."""
    return _classify(digit_matrix(spec, k), _signer(pt))


def digit_of(spec, pt, max_k=DEFAULT_MAX_K):
    sgn = _signer(pt)
    mats = _matrices(spec)
    edge = False
    for k in range(max_k + 1):
        verdict = _classify(mats.get(k), sgn)
        if verdict == _IN:
            return k
        if verdict == _EDGE:
            edge = True
    if edge:
        raise DegenerateOrbit(f"{pt} only reaches the boundary y'=0 under {spec}")
    raise NoDigit(f"no digit <= {max_k} for {pt} under {spec}")


def member_digits(spec, pt, max_k):
    """Every k in [0, max_k] whose branch maps pt into the triangle."""
    sgn = _signer(pt)
    mats = _matrices(spec)
    return [k for k in range(max_k + 1) if _classify(mats.get(k), sgn) == _IN]


def apply_matrix(M, pt):
    w0, w1, w2 = M.row_apply((1, pt.x, pt.y))
    if sign_of(w0) == 0:
        raise ProjectionPole(f"first homogeneous coordinate vanishes at {pt}")
    if not isinstance(w0, FieldElement) and not isinstance(w1, FieldElement):
        return TrianglePoint(Fraction(w1) / w0, Fraction(w2) / w0)
    inv = 1 / w0
    return TrianglePoint(w1 * inv, w2 * inv)


def apply_digit(spec, k, pt):
    return apply_matrix(digit_matrix(spec, k), pt)


def apply_map(spec, pt, max_k=DEFAULT_MAX_K):
    k = digit_of(spec, pt, max_k)
    return apply_digit(spec, k, pt), k


def closed_form_apply(spec, k, pt):
    """Explicit rational formulas for the five named maps."""
    if isinstance(spec, str):
        spec = TripMapSpec.parse(spec)
    x, y = pt.x, pt.y

    def div(a, b):
        if sign_of(b) == 0:
            raise ProjectionPole(f"closed form of {spec} has a pole at {pt}")
        return a / b

    if spec == E_132_132:
        if k != 1:
            raise ValueError("a closed form for T_{e,(132),(132)} is only available for digit 1")
        return TrianglePoint(div(x, 1 - x), div(y, 1 - x))
    if spec == TRIANGLE:
        return TrianglePoint(div(y, x), div(1 - x - k * y, x))
    if spec == E_23_E:
        return TrianglePoint(div(y, x), div((k + 1) * y + x - 1, x))
    if spec == S13_12_E:
        d = 1 - (k + 1) * y
        return TrianglePoint(div(x, d), div(y, d))
    if spec == S23_23_E:
        s = (-1) ** k
        half = Fraction(1, 2)
        first = div((1 + half * (-1 + s)) * x - s * y, x)
        cx = 2 + half * (-1 + s) + Fraction(1, 4) * (1 - s + 2 * k)
        cy = -s + half * (-1 + s)
        second = div(-1 + cx * x + cy * y, x)
        return TrianglePoint(first, second)
    raise ValueError(f"no closed form is available for {spec}")


@dataclass
class TripSequence:
    digits: list
    termination: str
    detail: str = ""


def trip_sequence(spec, pt, length, max_k=DEFAULT_MAX_K):
    digits = []
    for _ in range(length):
        try:
            pt, k = apply_map(spec, pt, max_k)
        except (DegenerateOrbit, NoDigit, ProjectionPole) as exc:
            return TripSequence(digits, exc.code, str(exc))
        digits.append(k)
    return TripSequence(digits, "length")

"""Real root isolation with Sturm sequences and exact bisection."""

from dataclasses import dataclass
from fractions import Fraction

from ..errors import NotSquarefree
from .poly import poly_gcd


@dataclass(frozen=True)
class IsolatingInterval:
    """Open interval (lo, hi) holding exactly one real root of some polynomial."""

    lo: Fraction
    hi: Fraction

    @property
    def width(self):
        return self.hi - self.lo

    @property
    def mid(self):
        return (self.lo + self.hi) / 2

    def contains(self, t):
        return self.lo < t < self.hi

    def __str__(self):
        return f"({self.lo}, {self.hi})"


def sturm_sequence(p):
    seq = [p, p.derivative()]
    while not seq[-1].is_zero():
        r = seq[-2] % seq[-1]
        if r.is_zero():
            break
        seq.append(-r)
    return seq


def _sign_changes(seq, t):
    prev = 0
    changes = 0
    for q in seq:
        v = q(t)
        if v:
            s = 1 if v > 0 else -1
            if prev and s != prev:
                changes += 1
            prev = s
    return changes


def count_roots(seq, a, b):
    """Distinct real roots in (a, b]."""
    return _sign_changes(seq, a) - _sign_changes(seq, b)


def root_bound(p):
    """Cauchy bound: every real root has |r| < bound."""
    lc = abs(p.lead)
    return 1 + max((abs(c) / lc for c in p.coeffs[:-1]), default=Fraction(0))


def _check_squarefree(p):
    if p.degree > 0 and poly_gcd(p, p.derivative()).degree > 0:
        raise NotSquarefree(f"{p} has a repeated factor")


def _nudge(p, t, lo, hi):
    """A point near t strictly inside (lo, hi) that is not a root of p."""
    step = (hi - lo) / 7
    cand = t
    while p(cand) == 0:
        step /= 2
        cand = t + step
    return cand


def isolate_real_roots(p):
    """One isolating interval per distinct real root, sorted left to right."""
    if p.is_zero():
        raise ValueError("zero polynomial has no isolated roots")
    if p.degree < 1:
        return []
    _check_squarefree(p)
    seq = sturm_sequence(p)
    bound = root_bound(p)
    lo, hi = -bound, bound
    out = []
    stack = [(lo, hi)]
    while stack:
        a, b = stack.pop()
        n = count_roots(seq, a, b)
        if n == 0:
            continue
        if n == 1:
            out.append(IsolatingInterval(a, b))
            continue
        m = _nudge(p, (a + b) / 2, a, b)
        stack.append((m, b))
        stack.append((a, m))
    out.sort(key=lambda iv: iv.lo)
    return out


def refine(interval, p, width):
    """Bisect until hi - lo <= width; the same root stays isolated."""
    lo, hi = interval.lo, interval.hi
    slo = p(lo) > 0
    while hi - lo > width:
        m = (lo + hi) / 2
        v = p(m)
        if v == 0:
            # rational root: shrink symmetrically around it
            h = width / 4
            while True:
                a, b = m - h, m + h
                if p(a) != 0 and p(b) != 0 and count_roots(sturm_sequence(p), a, b) == 1:
                    return IsolatingInterval(a, b)
                h /= 2
        if (v > 0) == slo:
            lo = m
        else:
            hi = m
    return IsolatingInterval(lo, hi)


def bisect_once(interval, p):
    m = interval.mid
    v = p(m)
    if v == 0:
        return refine(interval, p, interval.width / 2)
    if (v > 0) == (p(interval.lo) > 0):
        return IsolatingInterval(m, interval.hi)
    return IsolatingInterval(interval.lo, m)


def roots_in_open_interval(p, a, b):
    """Isolating intervals for the real roots of squarefree p lying in (a, b).

    Each returned interval is contained in [a, b]; roots equal to a or b are
    excluded.
    """
    a, b = Fraction(a), Fraction(b)
    out = []
    for iv in isolate_real_roots(p):
        while True:
            if iv.hi <= a or iv.lo >= b:
                break
            if a <= iv.lo and iv.hi <= b:
                out.append(iv)
                break
            # interval straddles an endpoint: decide by checking the endpoint
            for e in (a, b):
                if iv.lo < e < iv.hi and p(e) == 0:
                    iv = None
                    break
            if iv is None:
                break
            iv = bisect_once(iv, p)
    return out


def eval_range(coeffs, lo, hi):
    """Exact range of c0 + c1 t + c2 t^2 over the closed interval [lo, hi]."""
    c0, c1, c2 = coeffs
    vals = [c0 + c1 * lo + c2 * lo * lo, c0 + c1 * hi + c2 * hi * hi]
    if c2:
        t = -c1 / (2 * c2)
        if lo < t < hi:
            vals.append(c0 + c1 * t + c2 * t * t)
    return min(vals), max(vals)


__all__ = [
    "IsolatingInterval",
    "count_roots",
    "eval_range",
    "isolate_real_roots",
    "refine",
    "roots_in_open_interval",
    "sturm_sequence",
]

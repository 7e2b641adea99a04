"""Cubic units in (0, 1): reduction to the four canonical cubics.

A unit u is given by its monic integer cubic

    f(x) = x^3 + e1 A x^2 + e2 B x + e3,      A, B >= 0, e3 = +-1.

The sign pattern (e1, e2, e3), with the degenerate patterns A = 0 and/or
B = 0, splits into 18 cases numbered as follows:

    1..8    A, B != 0, patterns +++ ++- +-+ +-- -++ -+- --+ ---
    9..12   B = 0, patterns +.+ +.- -.+ -.-
    13..16  A = 0, patterns .++ .+- .-+ .--
    17, 18  A = B = 0, e3 = + and e3 = -

Each reachable case maps u to an element v in (0, 1) that is a root of

    form 1:  x^3 + P x^2 + Q x - 1      (P = 0 is the pure x^3 + Q x - 1)
    form 2:  x^3 - P x^2 - Q x + 1      P, Q >= 1
    form 4:  x^3 - P x^2 + Q x - 1      Q > P >= 1

and each form feeds one of the three classes of combo maps.  When a cubic
x^3 - P x^2 + Q x - 1 has P > Q, its (0, 1) roots come in a pair u, u2 and
the third root u3 exceeds 1; we then pass to v = u u2 = 1/u3, which is the
unique (0, 1) root of the reciprocal cubic x^3 - Q x^2 + P x - 1.  v is
re-rooted in that cubic's own field, so everything stays in degree 3.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .combo import (
    DEFAULT_MAX_ITER,
    ComboSpec,
    EigenCheck,
    PeriodicityReport,
    detect_periodicity,
    eigen_triple,
    left_eigencheck,
    theorem_combo,
    theorem_matrix,
)
from .errors import NoRootInUnitInterval, NotUnitShape, Reducible, TripError
from .exact import CubicField, FieldElement, PolyQ, discriminant, is_irreducible_cubic, sign_of
from .exact.field import rational_roots
from .exact.roots import roots_in_open_interval
from .trip import DEFAULT_MAX_K, TrianglePoint, make_point

SQUARING_CASES = (3, 4, 5, 10, 11, 15)
PASSTHROUGH_CASES = (2, 7, 14)
UNREACHABLE_CASES = (1, 8, 9, 12, 13, 16, 17, 18)

IDENTITY = "identity"
SQUARE = "square"
RECIPROCAL_PRODUCT = "reciprocal-product"

MAX_CHAIN = 3


@dataclass(frozen=True)
class UnitShape:
    is_unit_shape: bool
    sign_of_constant: Optional[int]


def unit_constant_check(p):
    """Does p look like the minimal polynomial of a cubic unit?"""
    if p.degree != 3 or not p.is_monic() or not p.is_integral():
        return UnitShape(False, None)
    c = p.coeff(0)
    if c in (1, -1):
        return UnitShape(True, int(c))
    return UnitShape(False, None)


@dataclass(frozen=True)
class CanonicalForm:
    form_id: int
    P: int
    Q: int

    def __post_init__(self):
        ok = {
            1: self.P >= 0 and self.Q >= 1,
            2: self.P >= 1 and self.Q >= 1,
            4: self.Q > self.P >= 1,
        }.get(self.form_id)
        if not ok:
            raise ValueError(f"invalid canonical form {self.form_id} with P={self.P}, Q={self.Q}")

    @property
    def poly(self):
        P, Q = self.P, self.Q
        if self.form_id == 1:
            return PolyQ.cubic(P, Q, -1)
        if self.form_id == 2:
            return PolyQ.cubic(-P, -Q, 1)
        return PolyQ.cubic(-P, Q, -1)

    def __str__(self):
        return f"form {self.form_id} (P={self.P}, Q={self.Q})"


@dataclass(frozen=True)
class TransformStep:
    case_id: int
    input_poly: PolyQ
    output_poly: PolyQ
    element_map: str


@dataclass
class TransformChain:
    steps: list = field(default_factory=list)

    def add(self, case_id, inp, out, element_map):
        self.steps.append(TransformStep(case_id, inp, out, element_map))
        if len(self.steps) > MAX_CHAIN:
            raise AssertionError(f"transform chain exceeded {MAX_CHAIN} steps")

    def __len__(self):
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)


# -- case table -------------------------------------------------------------


def magnitudes(p):
    """(e1, A, e2, B, e3) with signs in {+1, 0, -1}."""
    c2, c1, c0 = (int(p.coeff(i)) for i in (2, 1, 0))
    sg = lambda t: (t > 0) - (t < 0)  # noqa: E731
    return sg(c2), abs(c2), sg(c1), abs(c1), sg(c0)


def case_of(p):
    e1, A, e2, B, e3 = magnitudes(p)
    neg = lambda e: 1 if e < 0 else 0  # noqa: E731
    if A and B:
        return 1 + 4 * neg(e1) + 2 * neg(e2) + neg(e3)
    if A:
        return 9 + 2 * neg(e1) + neg(e3)
    if B:
        return 13 + 2 * neg(e2) + neg(e3)
    return 17 + neg(e3)


def square_transform(case_id, A, B=0):
    """Monic cubic satisfied by v = u^2 in the squaring cases."""
    if case_id == 3:
        return PolyQ.cubic(-(A * A + 2 * B), B * B - 2 * A, -1)
    if case_id == 4:
        return PolyQ.cubic(-(A * A + 2 * B), B * B + 2 * A, -1)
    if case_id == 5:
        return PolyQ.cubic(2 * B - A * A, B * B + 2 * A, -1)
    if case_id in (10, 11):
        return PolyQ.cubic(-A * A, 2 * A, -1)
    if case_id == 15:
        return PolyQ.cubic(-2 * B, B * B, -1)
    raise ValueError(f"case {case_id} is not a squaring case (expected one of {SQUARING_CASES})")


def reciprocal_transform(p):
    """x^3 + a x^2 + b x - 1  ->  x^3 - b x^2 - a x - 1 (roots inverted)."""
    if p.degree != 3 or not p.is_monic() or p.coeff(0) != -1:
        raise ValueError(f"reciprocal_transform needs a monic cubic with constant -1, got {p}")
    return PolyQ.cubic(-p.coeff(1), -p.coeff(2), -1)


# -- canonicalization ---------------------------------------------------------


@dataclass
class Canonical:
    u_field: CubicField
    v_field: CubicField
    v: FieldElement
    form: CanonicalForm
    chain: TransformChain


def _check_input(p):
    shape = unit_constant_check(p)
    if not shape.is_unit_shape:
        raise NotUnitShape(f"{p} is not a monic integer cubic with constant term +-1")
    if not is_irreducible_cubic(p):
        raise Reducible(f"{p} has a rational root {', '.join(map(str, sorted(rational_roots(p))))}")


def _reroot(g, value):
    """The field of g whose designated root equals ``value`` (an element of another field)."""
    cands = CubicField.roots_in(g)
    width = Fraction(1, 2)
    while len(cands) > 1:
        lo, hi = value.enclosure(width)
        keep = []
        for F in cands:
            iv = F.refine_to(width)
            if iv.hi >= lo and iv.lo <= hi:
                keep.append(F)
        cands = keep
        width /= 4
    if not cands:
        raise AssertionError(f"no root of {g} in (0, 1) matches {value}")
    return cands[0]


def _case6(P, Q, src_field, v, chain, inp):
    """Handler for x^3 - P x^2 + Q x - 1 with a root v in (0, 1)."""
    if P == Q:
        # x^3 - P x^2 + P x - 1 vanishes at 1, so irreducible input never lands here
        raise AssertionError(f"P = Q = {P} at the case-6 handler: input was reducible")
    if Q > P:
        chain.add(6, inp, inp, IDENTITY)
        return src_field, v, CanonicalForm(4, P, Q)
    out = reciprocal_transform(inp)
    chain.add(6, inp, out, RECIPROCAL_PRODUCT)
    fields = CubicField.roots_in(out)
    if len(fields) != 1:
        raise AssertionError(f"{out} should have exactly one root in (0, 1)")
    G = fields[0]
    return G, G.gen, CanonicalForm(4, Q, P)


def _canonicalize_root(p, F):
    chain = TransformChain()
    u = F.gen
    case = case_of(p)
    _, A, _, B, _ = magnitudes(p)
    if case in UNREACHABLE_CASES:
        raise AssertionError(f"case {case} has no root in (0, 1) yet {p} does")
    if case == 2:
        chain.add(2, p, p, IDENTITY)
        return F, u, CanonicalForm(1, A, B), chain
    if case == 7:
        chain.add(7, p, p, IDENTITY)
        return F, u, CanonicalForm(2, A, B), chain
    if case == 14:
        chain.add(14, p, p, IDENTITY)
        return F, u, CanonicalForm(1, 0, B), chain
    if case == 6:
        G, v, form = _case6(A, B, F, u, chain, p)
        return G, v, form, chain
    g = square_transform(case, A, B)
    chain.add(case, p, g, SQUARE)
    G = _reroot(g, u * u)
    v = G.gen
    c2, c1 = int(g.coeff(2)), int(g.coeff(1))
    if case == 5 and c2 >= 0:
        return G, v, CanonicalForm(1, c2, c1), chain
    P, Q = -c2, c1
    if Q < 1 or P < 1:
        raise AssertionError(
            f"case {case} squared to {g}: expected positive P, Q but got P={P}, Q={Q}"
        )
    H, w, form = _case6(P, Q, G, v, chain, g)
    return H, w, form, chain


def canonicalize_unit(p):
    """One :class:`Canonical` per root of p in (0, 1)."""
    _check_input(p)
    fields = CubicField.roots_in(p)
    if not fields:
        hint = ""
        if roots_in_open_interval(p, 1, 1 + _root_cap(p)):
            hint = f"; its reciprocal {reciprocal_poly(p)} has the inverse root in (0, 1)"
        raise NoRootInUnitInterval(f"{p} has no real root in (0, 1){hint}")
    out = []
    for F in fields:
        G, v, form, chain = _canonicalize_root(p, F)
        out.append(Canonical(F, G, v, form, chain))
    return out


def _root_cap(p):
    return sum(abs(c) for c in p.coeffs)


def reciprocal_poly(p):
    """Monic cubic whose roots are the inverses of the roots of p (constant +-1)."""
    c = p.coeff(0)
    return PolyQ([1 / c, p.coeff(2) / c, p.coeff(1) / c, 1])


# -- forms to pairs -------------------------------------------------------------


FORM_CLASS = {1: 1, 2: 2, 4: 3}


def pair_for_form(form, v):
    """(pair, combo) for a root v in (0, 1) of the form's cubic."""
    if not (sign_of(v) > 0 and sign_of(1 - v) > 0):
        raise ValueError("v must lie strictly between 0 and 1")
    if form.form_id == 4:
        pt = make_point(v, v - v * v)
        return pt, ComboSpec(3, form.P)
    if form.form_id in (1, 2):
        return make_point(v, v * v), ComboSpec(FORM_CLASS[form.form_id], form.Q - 1)
    raise ValueError(f"unknown form {form.form_id}")


@dataclass
class PipelineResult:
    field: CubicField
    v: FieldElement
    form: CanonicalForm
    pair: TrianglePoint
    combo: ComboSpec
    periodicity: PeriodicityReport
    chain: TransformChain
    discriminant: Fraction
    eigen: EigenCheck
    input_poly: PolyQ = None
    u_field: CubicField = None

    @property
    def class_id(self):
        return self.combo.class_id


def _staged(stage, fn, *args):
    try:
        return fn(*args)
    except TripError as exc:
        exc.stage = stage
        raise


def unit_pipeline(p, max_iter=DEFAULT_MAX_ITER, max_k=DEFAULT_MAX_K):
    """Canonicalize p, build the pair and combo map, and check it exactly."""
    canon = _staged("canonicalize", canonicalize_unit, p)
    disc = Fraction(discriminant(p))
    results = []
    for c in canon:
        pt, combo = _staged("pair", pair_for_form, c.form, c.v)
        cls = FORM_CLASS[c.form.form_id]
        M = _staged("theorem", theorem_matrix, cls, c.form.P, c.form.Q)
        expected = _staged("theorem", theorem_combo, cls, c.form.P, c.form.Q)
        if expected != combo:
            raise AssertionError(f"combo {combo} disagrees with theorem parameters {expected}")
        eig = left_eigencheck(M, eigen_triple(pt))
        rep = _staged("periodicity", detect_periodicity, combo, pt, max_iter, max_k)
        results.append(
            PipelineResult(c.v_field, c.v, c.form, pt, combo, rep, c.chain, disc, eig, p, c.u_field)
        )
    return results


__all__ = [
    "Canonical",
    "CanonicalForm",
    "PASSTHROUGH_CASES",
    "PipelineResult",
    "SQUARING_CASES",
    "TransformChain",
    "TransformStep",
    "UNREACHABLE_CASES",
    "UnitShape",
    "canonicalize_unit",
    "case_of",
    "pair_for_form",
    "reciprocal_poly",
    "reciprocal_transform",
    "square_transform",
    "unit_constant_check",
    "unit_pipeline",
]

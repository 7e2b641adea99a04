"""Combo TRIP maps of the three classes, periodicity detection, theorem matrices.

Class 1: T_{e,(132),(132)} n times, then T_{e,e,e} once.
Class 2: T_{e,(132),(132)} n times, then T_{e,(23),e} once.
Class 3: T_{(13),(12),e} n times, then T_{(23),(23),e} once.
"""

import re
from dataclasses import dataclass, field
from typing import Optional

from .errors import DegenerateOrbit, NoDigit, NotSquarefree, ParameterRange, ParseError, ProjectionPole
from .exact import CubicField, PolyQ
from .matrix import MatrixZ
from .trip import (
    DEFAULT_MAX_K,
    E_132_132,
    E_23_E,
    S13_12_E,
    S23_23_E,
    TRIANGLE,
    TrianglePoint,
    apply_digit,
    apply_map,
    cubic_pair,
    digit_matrix,
)

DEFAULT_MAX_ITER = 1000

CLASS_MAPS = {
    1: (E_132_132, TRIANGLE),
    2: (E_132_132, E_23_E),
    3: (S13_12_E, S23_23_E),
}

PROVEN = "proven-by-revisit"
CAP_REACHED = "unknown-cap-reached"
DEGENERATE = "degenerate"


@dataclass(frozen=True)
class ComboSpec:
    class_id: int
    n: int

    def __post_init__(self):
        if self.class_id not in CLASS_MAPS:
            raise ValueError(f"class must be 1, 2 or 3, got {self.class_id}")
        if self.n < 0:
            raise ValueError("n must be non-negative")

    @property
    def repeated(self):
        return CLASS_MAPS[self.class_id][0]

    @property
    def closing(self):
        return CLASS_MAPS[self.class_id][1]

    @classmethod
    def parse(cls, text):
        m = re.fullmatch(r"\s*class\s*:\s*(\d+)\s*,\s*n\s*:\s*(\d+)\s*", text)
        if not m:
            raise ParseError("combo spec must look like 'class:<1|2|3>,n:<int>'", text, 0)
        try:
            return cls(int(m.group(1)), int(m.group(2)))
        except ValueError as exc:
            raise ParseError(str(exc), text, m.start(1)) from None

    def __str__(self):
        return f"class:{self.class_id},n:{self.n}"


@dataclass(frozen=True)
class DigitTuple:
    ms: tuple
    k: int

    def flat(self):
        return (*self.ms, self.k)

    def __str__(self):
        return "(" + ",".join(map(str, self.ms)) + ";" + str(self.k) + ")"


def combo_apply(spec, pt, max_k=DEFAULT_MAX_K):
    ms = []
    for _ in range(spec.n):
        pt, m = apply_map(spec.repeated, pt, max_k)
        ms.append(m)
    pt, k = apply_map(spec.closing, pt, max_k)
    return pt, DigitTuple(tuple(ms), k)


@dataclass
class ComboSequence:
    tuples: list
    termination: str
    detail: str = ""


def combo_sequence(spec, pt, length, max_k=DEFAULT_MAX_K):
    tuples = []
    for _ in range(length):
        try:
            pt, t = combo_apply(spec, pt, max_k)
        except (DegenerateOrbit, NoDigit, ProjectionPole) as exc:
            return ComboSequence(tuples, exc.code, str(exc))
        tuples.append(t)
    return ComboSequence(tuples, "length")


@dataclass
class PeriodicityReport:
    """Outcome of exact cycle detection on a combo orbit.

    ``preperiod``/``period``/``tuples`` are only set for a proven revisit;
    ``orbit`` keeps every tuple produced, in order.
    """

    status: str
    preperiod: Optional[int] = None
    period: Optional[int] = None
    tuples: list = field(default_factory=list)
    orbit: list = field(default_factory=list)
    steps: int = 0
    detail: str = ""

    @property
    def proven(self):
        return self.status == PROVEN


def detect_periodicity(spec, pt, cap=DEFAULT_MAX_ITER, max_k=DEFAULT_MAX_K):
    seen = {pt.state_key(): 0}
    orbit = []
    for step in range(1, cap + 1):
        try:
            pt, t = combo_apply(spec, pt, max_k)
        except (DegenerateOrbit, NoDigit, ProjectionPole) as exc:
            return PeriodicityReport(DEGENERATE, orbit=orbit, steps=step - 1, detail=str(exc))
        orbit.append(t)
        key = pt.state_key()
        first = seen.get(key)
        if first is not None:
            return PeriodicityReport(
                PROVEN, first, step - first, orbit[first:step], orbit=orbit, steps=step
            )
        seen[key] = step
    return PeriodicityReport(CAP_REACHED, orbit=orbit, steps=cap)


# -- theorem machinery ------------------------------------------------------


def _check_range(class_id, A, B):
    ok = {
        1: A >= 0 and B >= 1,
        2: A >= 1 and B >= 1,
        3: 1 <= A < B,
    }.get(class_id)
    if ok is None:
        raise ParameterRange(f"unknown class {class_id}")
    if not ok:
        need = {1: "A >= 0, B >= 1", 2: "A, B >= 1", 3: "B > A >= 1"}[class_id]
        raise ParameterRange(f"class {class_id} needs {need}; got A={A}, B={B}")


def theorem_matrix(class_id, A, B):
    _check_range(class_id, A, B)
    if class_id == 1:
        return MatrixZ(((0, 0, 1), (1, 0, -B), (0, 1, -A)))
    if class_id == 2:
        return MatrixZ(((0, 0, -1), (1, 0, B), (0, 1, A)))
    return MatrixZ(((0, 0, -1), (1, 1, 1 + B - A), (0, -1, -1 + A)))


def theorem_combo(class_id, A, B):
    _check_range(class_id, A, B)
    return ComboSpec(class_id, B - 1 if class_id in (1, 2) else A)


def theorem_factors(class_id, A, B):
    """(map, digit) steps whose digit matrices multiply to theorem_matrix."""
    _check_range(class_id, A, B)
    if class_id == 1:
        return [(E_132_132, 1)] * (B - 1) + [(TRIANGLE, A)]
    if class_id == 2:
        return [(E_132_132, 1)] * (B - 1) + [(E_23_E, A - 1)]
    return [(S13_12_E, 0)] * A + [(S23_23_E, 2 * (1 + B - A) - 4)]


def expected_tuple(class_id, A, B):
    steps = theorem_factors(class_id, A, B)
    return DigitTuple(tuple(d for _, d in steps[:-1]), steps[-1][1])


def factor_product(steps):
    M = MatrixZ.identity()
    for s, k in steps:
        M = M @ digit_matrix(s, k)
    return M


def theorem_polynomial(class_id, A, B):
    _check_range(class_id, A, B)
    if class_id == 1:
        return PolyQ.cubic(A, B, -1)
    if class_id == 2:
        return PolyQ.cubic(-A, -B, 1)
    return PolyQ.cubic(-A, B, -1)


def theorem_fields(class_id, A, B, require_irreducible=True):
    """One field per root in (0, 1) of the theorem's cubic."""
    return CubicField.roots_in(theorem_polynomial(class_id, A, B), require_irreducible=require_irreducible)


def theorem_pair(class_id, field_):
    return cubic_pair(field_, "alpha-alpha2" if class_id == 3 else "alpha2")


@dataclass(frozen=True)
class EigenCheck:
    is_eigen: bool
    eigenvalue: object


def left_eigencheck(M, triple):
    """Is the row vector (1, e1, e2) a left eigenvector of M?"""
    one, e1, e2 = triple
    if one != 1:
        raise ValueError("eigen triple must start with 1")
    r0, r1, r2 = M.row_apply(triple)
    lam = r0
    return EigenCheck(r1 == lam * e1 and r2 == lam * e2, lam)


def forced_apply(steps, pt):
    for s, k in steps:
        pt = apply_digit(s, k, pt)
    return pt


def eigen_triple(pt):
    return (1, pt.x, pt.y)


@dataclass
class CellReport:
    """Checks for one (A, B) cell of a theorem grid.

    ``period_ok`` is None when the cubic is reducible: its pair then lives
    in a quotient ring rather than a field and no orbit claim is made.  A
    cubic with a repeated root has no pair at all; both pair checks stay None.
    """

    theorem: int
    A: int
    B: int
    matrix_ok: Optional[bool] = None
    eigen_ok: Optional[bool] = None
    period_ok: Optional[bool] = None
    irreducible: Optional[bool] = None
    tuples: list = field(default_factory=list)
    detail: str = ""

    @property
    def passed(self):
        return bool(self.matrix_ok) and self.eigen_ok is not False and self.period_ok is not False


def verify_cell(class_id, A, B, cap=50, max_k=DEFAULT_MAX_K):
    rep = CellReport(class_id, A, B)
    try:
        M = theorem_matrix(class_id, A, B)
    except ParameterRange as exc:
        rep.detail = str(exc)
        return rep
    rep.matrix_ok = factor_product(theorem_factors(class_id, A, B)) == M
    try:
        fields = theorem_fields(class_id, A, B, require_irreducible=False)
    except NotSquarefree as exc:
        rep.detail = f"excluded: {exc}"
        return rep
    if len(fields) != 1:
        rep.eigen_ok = False
        rep.detail = f"expected one root in (0, 1), found {len(fields)}"
        return rep
    F = fields[0]
    rep.irreducible = F.irreducible
    pt = theorem_pair(class_id, F)
    eig = left_eigencheck(M, eigen_triple(pt))
    rep.eigen_ok = eig.is_eigen and eig.eigenvalue == F.gen
    if not F.irreducible:
        rep.detail = "reducible cubic: checked in the quotient ring, orbit skipped"
        return rep
    per = detect_periodicity(theorem_combo(class_id, A, B), pt, cap, max_k)
    rep.tuples = per.tuples
    rep.period_ok = (
        per.proven and per.preperiod == 0 and per.period == 1 and per.tuples == [expected_tuple(class_id, A, B)]
    )
    if not rep.period_ok:
        rep.detail = f"{per.status} preperiod={per.preperiod} period={per.period} {per.detail}".strip()
    return rep


__all__ = [
    "CAP_REACHED",
    "CellReport",
    "ComboSequence",
    "ComboSpec",
    "DEGENERATE",
    "DigitTuple",
    "EigenCheck",
    "PROVEN",
    "PeriodicityReport",
    "TrianglePoint",
    "combo_apply",
    "combo_sequence",
    "detect_periodicity",
    "eigen_triple",
    "expected_tuple",
    "factor_product",
    "forced_apply",
    "left_eigencheck",
    "theorem_combo",
    "theorem_factors",
    "theorem_fields",
    "theorem_matrix",
    "theorem_pair",
    "theorem_polynomial",
    "verify_cell",
]

"""Rows of the Hermite matrix of a pair under the family of combo maps.

The combo maps are listed as T(1), T(2), ... by interleaving the classes
before increasing n:

    i = 1, 2, 3, 4, ...  ->  (1, 0), (2, 0), (3, 0), (1, 1), ...

Row i is the concatenated digit sequence of one fixed pair under T(i).
A row search is bounded; failing to find a periodic row says nothing about
whether one exists.
"""

from dataclasses import dataclass, field
from typing import Optional

from .combo import (
    DEFAULT_MAX_ITER,
    PROVEN,
    ComboSpec,
    PeriodicityReport,
    combo_apply,
    detect_periodicity,
)
from .errors import DegenerateOrbit, NoDigit, ProjectionPole
from .trip import DEFAULT_MAX_K

DEFAULT_ROWS = 60


def family_decode(i):
    if i < 1:
        raise ValueError("family index starts at 1")
    return ComboSpec((i - 1) % 3 + 1, (i - 1) // 3)


def family_index(spec):
    return 3 * spec.n + spec.class_id


@dataclass
class HermiteRow:
    index: int
    spec: ComboSpec
    tuples: list
    termination: str
    detail: str = ""
    periodicity: Optional[PeriodicityReport] = None

    @property
    def digits(self):
        return [d for t in self.tuples for d in t.flat()]

    @property
    def periodic(self):
        return self.periodicity is not None and self.periodicity.status == PROVEN


def rechunk(digits, n):
    """Split a flat row back into tuples of length n + 1."""
    w = n + 1
    if len(digits) % w:
        raise ValueError(f"row length {len(digits)} is not a multiple of {w}")
    return [tuple(digits[j : j + w]) for j in range(0, len(digits), w)]


def hermite_row(pt, i, length=None, max_iter=DEFAULT_MAX_ITER, max_k=DEFAULT_MAX_K):
    """Row i for pt: ``length`` combo tuples (default: until a revisit or the cap).

    A proven revisit is attached as ``periodicity``; when ``length`` is given
    the row is extended, past the detection point if needed, by running the
    periodic orbit.
    """
    spec = family_decode(i)
    rep = detect_periodicity(spec, pt, max_iter, max_k)
    tuples = list(rep.orbit)
    if rep.status == PROVEN:
        if length is not None:
            block = rep.tuples
            while len(tuples) < length:
                tuples.append(block[(len(tuples) - rep.preperiod) % rep.period])
            tuples = tuples[:length]
        return HermiteRow(i, spec, tuples, "periodic", "", rep)
    if length is not None:
        tuples = tuples[:length]
    if rep.status == "degenerate":
        return HermiteRow(i, spec, tuples, "degenerate", rep.detail)
    return HermiteRow(i, spec, tuples, "cap", f"no revisit within {max_iter} combo steps")


def verify_block(pt, row):
    """Re-simulate a periodic row from scratch and confirm the repeating block."""
    rep = row.periodicity
    if rep is None or rep.status != PROVEN:
        return False
    cur = pt
    try:
        for _ in range(rep.preperiod):
            cur, _t = combo_apply(row.spec, cur)
        start = cur.state_key()
        seen = []
        for _ in range(rep.period):
            cur, t = combo_apply(row.spec, cur)
            seen.append(t)
    except (DegenerateOrbit, NoDigit, ProjectionPole):
        return False
    return seen == list(rep.tuples) and cur.state_key() == start


@dataclass
class SearchResult:
    """Outcome of a bounded row search.

    ``found`` False only means no row among the first ``scanned`` proved
    periodic under the caps; ``rows`` records what happened to each.
    """

    found: bool
    row: Optional[HermiteRow]
    scanned: int
    rows: list = field(default_factory=list)

    @property
    def index(self):
        return self.row.index if self.row else None


def find_periodic_row(pt, max_rows=DEFAULT_ROWS, max_iter=DEFAULT_MAX_ITER, max_k=DEFAULT_MAX_K):
    rows = []
    for i in range(1, max_rows + 1):
        r = hermite_row(pt, i, max_iter=max_iter, max_k=max_k)
        rows.append(r)
        if r.periodic:
            return SearchResult(True, r, i, rows)
    return SearchResult(False, None, max_rows, rows)


__all__ = [
    "DEFAULT_ROWS",
    "HermiteRow",
    "SearchResult",
    "family_decode",
    "family_index",
    "find_periodic_row",
    "hermite_row",
    "rechunk",
    "verify_block",
]

"""Command line entry point: ``combotrip <command> ...``.

Commands: sequence, verify, unit, hermite, partition, selftest.  Global
options (--max-digit, --max-iter, --rows, --seed, --format) may appear before
or after the command name.  The exit status is 0 exactly when every
requested check passed.
"""

import argparse
import csv
import io
import json
import random
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import serialize
from .combo import ComboSpec, combo_sequence, verify_cell
from .errors import TripError
from .exact import CubicField, parse_poly
from .hermite import find_periodic_row, hermite_row
from .partition import partition_cells, render_svg
from .trip import (
    DEFAULT_MAX_K,
    TripMapSpec,
    cubic_pair,
    digit_of,
    make_point,
    parse_rational_point,
    trip_sequence,
)
from .units import unit_pipeline


@dataclass(frozen=True)
class RunConfig:
    max_digit: int = DEFAULT_MAX_K
    max_iter: int = 1000
    rows: int = 60
    seed: int = 0
    fmt: str = "json"

    def __post_init__(self):
        for name in ("max_digit", "max_iter", "rows"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.fmt not in ("json", "csv", "text"):
            raise ValueError(f"unknown format {self.fmt!r}")


# -- input helpers ----------------------------------------------------------------


def parse_range(text):
    """'3' -> [3]; '0:10' -> [0, ..., 10] (inclusive)."""
    if ":" in text:
        a, b = text.split(":", 1)
        return list(range(int(a), int(b) + 1))
    return [int(text)]


def resolve_point(point=None, poly=None, pair="alpha,alpha2", root=0):
    """A triangle point from 'p/q,p/q', from 'poly=...;pair=...', or from --poly/--pair."""
    if point and point.strip().startswith("poly="):
        fields = dict(part.split("=", 1) for part in point.split(";") if part.strip())
        poly = fields.get("poly")
        pair = fields.get("pair", pair)
        point = None
    if point:
        return parse_rational_point(point)
    if not poly:
        raise ValueError("give --point p/q,p/q or --poly with --pair")
    fields = CubicField.roots_in(parse_poly(poly), require_irreducible=False)
    if not fields:
        raise ValueError(f"{poly} has no root in (0, 1)")
    if not 0 <= root < len(fields):
        raise ValueError(f"--root {root} out of range; {len(fields)} root(s) in (0, 1)")
    return cubic_pair(fields[root], pair.replace(" ", ""))


# -- output -------------------------------------------------------------------


def _emit(out, cfg, doc, rows=None, text=None):
    if cfg.fmt == "json":
        out.write(json.dumps(serialize.to_jsonable(doc), indent=2) + "\n")
    elif cfg.fmt == "csv":
        rows = rows or []
        if rows:
            buf = io.StringIO()
            w = csv.DictWriter(buf, fieldnames=list(rows[0].keys()), lineterminator="\n")
            w.writeheader()
            for r in rows:
                w.writerow({k: _csv_cell(v) for k, v in r.items()})
            out.write(buf.getvalue())
    else:
        out.write((text if text is not None else str(doc)) + "\n")


def _csv_cell(v):
    if isinstance(v, (list, tuple)):
        return " ".join(map(str, v))
    return v


# -- commands -----------------------------------------------------------------


def cmd_sequence(args, cfg, out):
    pt = resolve_point(args.point, args.poly, args.pair, args.root)
    if args.combo:
        seq = combo_sequence(ComboSpec.parse(args.combo), pt, args.len, cfg.max_digit)
        digits = [d for t in seq.tuples for d in t.flat()]
        doc = {"combo": str(ComboSpec.parse(args.combo)), "tuples": seq.tuples, "digits": digits,
               "termination": seq.termination, "detail": seq.detail}
    else:
        spec = TripMapSpec.parse(args.map)
        seq = trip_sequence(spec, pt, args.len, cfg.max_digit)
        digits = seq.digits
        doc = {"map": str(spec), "digits": digits, "termination": seq.termination, "detail": seq.detail}
    rows = [{"position": i, "digit": d} for i, d in enumerate(digits)]
    text = " ".join(map(str, digits)) + f"  [{seq.termination}]"
    _emit(out, cfg, doc, rows, text)
    return 0


def cmd_verify(args, cfg, out):
    cells = [verify_cell(args.theorem, A, B, cfg.max_iter, cfg.max_digit)
             for A in parse_range(args.A) for B in parse_range(args.B)]
    ok = all(c.passed for c in cells)
    rows = [
        {"A": c.A, "B": c.B, "matrixOK": c.matrix_ok, "eigenOK": c.eigen_ok, "periodOK": c.period_ok,
         "passed": c.passed, "detail": c.detail}
        for c in cells
    ]
    lines = [
        f"A={c.A:<3} B={c.B:<3} matrix={_mark(c.matrix_ok)} eigen={_mark(c.eigen_ok)} "
        f"period={_mark(c.period_ok)} {c.detail}".rstrip()
        for c in cells
    ]
    lines.append(f"{sum(c.passed for c in cells)}/{len(cells)} cells pass")
    _emit(out, cfg, {"theorem": args.theorem, "cells": cells, "passed": ok}, rows, "\n".join(lines))
    return 0 if ok else 1


def _mark(v):
    return {True: "ok", False: "FAIL", None: "-"}[v]


def cmd_unit(args, cfg, out):
    results = unit_pipeline(parse_poly(args.poly), cfg.max_iter, cfg.max_digit)
    ok = all(r.eigen.is_eigen and r.periodicity.proven for r in results)
    rows, lines = [], []
    for r in results:
        per = r.periodicity
        rows.append({
            "form": r.form.form_id, "P": r.form.P, "Q": r.form.Q, "class": r.combo.class_id, "n": r.combo.n,
            "status": per.status, "preperiod": per.preperiod, "period": per.period,
            "eigen": r.eigen.is_eigen, "discriminant": str(r.discriminant),
            "chain": " ".join(f"{s.case_id}:{s.element_map}" for s in r.chain),
        })
        chain = ", ".join(f"case {s.case_id} {s.element_map}" for s in r.chain)
        lines.append(
            f"{r.form}; class {r.combo.class_id} n={r.combo.n}; {per.status} "
            f"preperiod={per.preperiod} period={per.period}; eigen={_mark(r.eigen.is_eigen)}; chain: {chain}"
        )
    _emit(out, cfg, {"poly": args.poly, "results": results, "passed": ok}, rows, "\n".join(lines))
    return 0 if ok else 1


def cmd_hermite(args, cfg, out):
    pt = resolve_point(args.point, args.poly, args.pair, args.root)
    if args.stream:
        for i in range(1, cfg.rows + 1):
            r = hermite_row(pt, i, args.len, cfg.max_iter, cfg.max_digit)
            out.write(json.dumps(serialize.to_jsonable(r)) + "\n")
    res = find_periodic_row(pt, cfg.rows, cfg.max_iter, cfg.max_digit)
    rows = [
        {"index": r.index, "class": r.spec.class_id, "n": r.spec.n, "termination": r.termination,
         "preperiod": r.periodicity.preperiod if r.periodicity else None,
         "period": r.periodicity.period if r.periodicity else None, "digits": r.digits[: args.len]}
        for r in res.rows
    ]
    if res.found:
        p = res.row.periodicity
        verdict = f"found at i={res.index} ({res.row.spec}), preperiod={p.preperiod} period={p.period}"
    else:
        verdict = f"no periodic row among the first {res.scanned} (bounded search; not a proof of non-periodicity)"
    lines = [f"i={r['index']:<4} {r['termination']:<10} " + " ".join(map(str, r["digits"])) for r in rows]
    lines.append(verdict)
    doc = {"found": res.found, "index": res.index, "scanned": res.scanned, "search": res}
    _emit(out, cfg, doc, rows, "\n".join(lines))
    return 0


def cmd_partition(args, cfg, out):
    spec = TripMapSpec.parse(args.map)
    cells = partition_cells(spec, args.depth, args.cells)
    if args.svg:
        with open(args.svg, "w") as fh:
            fh.write(render_svg(cells))
    rows = [
        {"path": "-".join(map(str, c.path)), **{f"{a}{j + 1}": str(v[i]) for j, v in enumerate(c.vertices)
                                                  for i, a in enumerate("xy")}}
        for c in cells
    ]
    lines = [f"{r['path']}: " + " ".join(f"({v[0]}, {v[1]})" for v in c.vertices) for r, c in zip(rows, cells)]
    doc = {"map": str(spec), "depth": args.depth,
           "cells": [{"path": list(c.path), "vertices": [list(v) for v in c.vertices]} for c in cells],
           "vertex_count": 3 * len(cells), "svg": args.svg}
    _emit(out, cfg, doc, rows, "\n".join(lines))
    return 0


def cmd_selftest(args, cfg, out):
    """A short battery of exact checks with known answers."""
    rng = random.Random(cfg.seed)
    checks = []

    def check(name, fn):
        try:
            ok = bool(fn())
            checks.append({"check": name, "passed": ok, "detail": ""})
        except Exception as exc:  # a crash is a failed check, reported not raised
            checks.append({"check": name, "passed": False, "detail": f"{type(exc).__name__}: {exc}"})

    F = CubicField.roots_in(parse_poly("x^3+x^2+x-1"))[0]
    check("triangle sequence of (a, a^2) for x^3+x^2+x-1 is all 1s",
          lambda: trip_sequence(TripMapSpec.parse("e,e,e"), cubic_pair(F), 10).digits == [1] * 10)
    check("digit of (7/10, 1/5) under e,e,e is 1",
          lambda: digit_of(TripMapSpec.parse("e,e,e"), make_point(Fraction(7, 10), Fraction(1, 5))) == 1)
    for th, A, B in ((1, 3, 2), (2, 2, 3), (3, 1, 2)):
        check(f"theorem {th} cell A={A} B={B}", lambda th=th, A=A, B=B: verify_cell(th, A, B).passed)
    check("unit x^3+x^2-1 reaches form 4 (1,2), class 3 n=1",
          lambda: [(r.form.form_id, r.form.P, r.form.Q, r.combo.n, r.periodicity.period)
                   for r in unit_pipeline(parse_poly("x^3+x^2-1"))] == [(4, 1, 2, 1, 1)])
    spec = TripMapSpec.parse("e,e,e")

    def floor_rule():
        for _ in range(200):
            q = rng.randint(2, 400)
            x = Fraction(rng.randint(2, q - 1), q)
            y = Fraction(rng.randint(1, q - 1), q)
            if not y < x:
                continue
            k = (1 - x) // y
            if (1 - x) == k * y:
                continue  # boundary set
            if digit_of(spec, make_point(x, y)) != k:
                return False
        return True

    check("e,e,e digits follow floor((1-x)/y) on random points", floor_rule)
    ok = all(c["passed"] for c in checks)
    lines = [f"{'PASS' if c['passed'] else 'FAIL'}  {c['check']} {c['detail']}".rstrip() for c in checks]
    _emit(out, cfg, {"checks": checks, "passed": ok}, checks, "\n".join(lines))
    return 0 if ok else 1


# -- argument parsing -----------------------------------------------------------


def _global_options(parser, suppress):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--max-digit", type=int, default=d(DEFAULT_MAX_K), help="largest digit tried per step")
    parser.add_argument("--max-iter", type=int, default=d(1000), help="cap on combo steps for cycle detection")
    parser.add_argument("--rows", type=int, default=d(60), help="Hermite rows to scan")
    parser.add_argument("--seed", type=int, default=d(0), help="seed for randomized checks")
    parser.add_argument("--format", choices=("json", "csv", "text"), default=d("json"))


def _point_options(p):
    p.add_argument("--point", help="'p/q,p/q' or 'poly=<cubic>;pair=<alpha,alpha2|alpha,alpha-alpha2>'")
    p.add_argument("--poly", help="cubic with a root in (0, 1), e.g. x^3+x^2+x-1 or 1,1,1,-1")
    p.add_argument("--pair", default="alpha,alpha2", help="alpha,alpha2 or alpha,alpha-alpha2")
    p.add_argument("--root", type=int, default=0, help="which root in (0, 1), counted from the left")


def build_parser():
    parser = argparse.ArgumentParser(prog="combotrip", description="Exact TRIP and combo TRIP map computations.")
    _global_options(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_options(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sequence", parents=[common], help="digit sequence of a point")
    p.add_argument("--map", default="e,e,e", help="permutation triple, e.g. 'e,(23),e'")
    p.add_argument("--combo", help="combo map 'class:<c>,n:<n>' instead of --map")
    p.add_argument("--len", type=int, default=20)
    _point_options(p)
    p.set_defaults(func=cmd_sequence)

    p = sub.add_parser("verify", parents=[common], help="check a theorem on a grid of (A, B)")
    p.add_argument("--theorem", type=int, choices=(1, 2, 3), required=True)
    p.add_argument("--A", default="1:5", help="value or inclusive range lo:hi")
    p.add_argument("--B", default="1:5", help="value or inclusive range lo:hi")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("unit", parents=[common], help="run the unit pipeline on a cubic")
    p.add_argument("--poly", required=True)
    p.set_defaults(func=cmd_unit)

    p = sub.add_parser("hermite", parents=[common], help="scan Hermite rows for a periodic one")
    _point_options(p)
    p.add_argument("--len", type=int, default=12, help="digits shown per row")
    p.add_argument("--stream", action="store_true", help="first write one JSON line per row")
    p.set_defaults(func=cmd_hermite)

    p = sub.add_parser("partition", parents=[common], help="exact vertices of partition cells")
    p.add_argument("--map", default="e,e,e")
    p.add_argument("--depth", type=int, default=1, choices=range(1, 7), metavar="{1..6}")
    p.add_argument("--cells", type=int, default=8, help="digits 0..cells-1 per level")
    p.add_argument("--svg", help="also write an SVG drawing to this file")
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("selftest", parents=[common], help="quick exact self-checks")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(args.max_digit, args.max_iter, args.rows, args.seed, args.format)
        return args.func(args, cfg, out)
    except (TripError, ValueError) as exc:
        msg = str(exc)
        if getattr(exc, "stage", None) is None and isinstance(exc, TripError):
            msg = f"{exc.code}: {exc}" if not msg.startswith(exc.code) else msg
        print(f"error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

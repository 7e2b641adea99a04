"""JSON encoding of library objects, exact throughout.

Rationals are written as "num/den" strings, integers stay integers.  Every
dataclass is written as an object with a "type" tag so that ``loads(dumps(x))``
rebuilds an equal object.
"""

import dataclasses
import json
import re
from fractions import Fraction

from . import combo, hermite, trip, units
from .exact import CubicField, FieldElement, PolyQ, format_poly
from .exact.roots import IsolatingInterval
from .matrix import MatrixZ

_RAT = re.compile(r"^-?\d+/\d+$")

_DATACLASSES = {
    cls.__name__: cls
    for cls in (
        trip.Perm3,
        trip.TripMapSpec,
        trip.TrianglePoint,
        trip.TripSequence,
        combo.ComboSpec,
        combo.DigitTuple,
        combo.ComboSequence,
        combo.PeriodicityReport,
        combo.EigenCheck,
        combo.CellReport,
        units.UnitShape,
        units.CanonicalForm,
        units.TransformStep,
        units.TransformChain,
        units.PipelineResult,
        hermite.HermiteRow,
        hermite.SearchResult,
        IsolatingInterval,
    )
}

# read-only properties worth showing in the document; ignored when decoding
_EXTRAS = {
    "HermiteRow": lambda r: {"digits": r.digits},
    "CanonicalForm": lambda f: {"poly": format_poly(f.poly)},
    "TransformStep": lambda s: {
        "input": format_poly(s.input_poly),
        "output": format_poly(s.output_poly),
    },
    "TrianglePoint": lambda p: {"display": [str(p.x), str(p.y)]},
}


def rat(q):
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def to_jsonable(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return rat(obj)
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, PolyQ):
        return {"type": "PolyQ", "coeffs": [rat(c) for c in obj.coeffs], "display": format_poly(obj)}
    if isinstance(obj, CubicField):
        iv = obj.interval
        return {
            "type": "CubicField",
            "poly": to_jsonable(obj.min_poly),
            "interval": [rat(iv.lo), rat(iv.hi)],
            "irreducible": obj.irreducible,
        }
    if isinstance(obj, FieldElement):
        return {"type": "FieldElement", "field": to_jsonable(obj.field), "coeffs": [rat(c) for c in obj.coeffs]}
    if isinstance(obj, MatrixZ):
        return {"type": "MatrixZ", "rows": obj.tolist()}
    if dataclasses.is_dataclass(obj):
        name = type(obj).__name__
        if name not in _DATACLASSES:
            raise TypeError(f"no JSON encoding registered for {name}")
        out = {"type": name}
        for f in dataclasses.fields(obj):
            out[f.name] = to_jsonable(getattr(obj, f.name))
        if name in _EXTRAS:
            out.update(to_jsonable(_EXTRAS[name](obj)))
        return out
    raise TypeError(f"cannot encode {type(obj).__name__}")


def from_jsonable(data, hint=None):
    if isinstance(data, list):
        vals = [from_jsonable(v) for v in data]
        return tuple(vals) if hint is tuple else vals
    if isinstance(data, str):
        return Fraction(data) if _RAT.match(data) else data
    if not isinstance(data, dict):
        return data
    kind = data.get("type")
    if kind is None:
        return {k: from_jsonable(v) for k, v in data.items()}
    if kind == "PolyQ":
        return PolyQ([Fraction(c) for c in data["coeffs"]])
    if kind == "CubicField":
        lo, hi = (Fraction(v) for v in data["interval"])
        return CubicField(
            from_jsonable(data["poly"]), IsolatingInterval(lo, hi), require_irreducible=data.get("irreducible", True)
        )
    if kind == "FieldElement":
        return FieldElement(from_jsonable(data["field"]), [Fraction(c) for c in data["coeffs"]])
    if kind == "MatrixZ":
        return MatrixZ(data["rows"])
    cls = _DATACLASSES.get(kind)
    if cls is None:
        raise ValueError(f"unknown record type {kind!r}")
    kwargs = {}
    for f in dataclasses.fields(cls):
        if f.name in data:
            kwargs[f.name] = from_jsonable(data[f.name], f.type)
    return cls(**kwargs)


def dumps(obj, **kw):
    return json.dumps(to_jsonable(obj), **kw)


def loads(text):
    return from_jsonable(json.loads(text))


__all__ = ["dumps", "from_jsonable", "loads", "rat", "to_jsonable"]

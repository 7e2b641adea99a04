import io
import json
import random
from fractions import Fraction

import pytest

from combotrip import serialize
from combotrip.cli import RunConfig, main, parse_range, resolve_point
from combotrip.combo import ComboSpec, detect_periodicity, verify_cell
from combotrip.errors import DegenerateOrbit, NoDigit
from combotrip.exact import CubicField, parse_poly
from combotrip.hermite import find_periodic_row, hermite_row
from combotrip.partition import partition_cells, render_svg
from combotrip.trip import NAMED_MAPS, TRIANGLE, TripMapSpec, cubic_pair, digit_of, make_point, trip_sequence
from combotrip.units import unit_pipeline


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def test_sequence_json():
    code, text = run("sequence", "--map", "e,e,e", "--poly", "x^3+x^2+x-1", "--len", "10")
    assert code == 0
    doc = json.loads(text)
    assert doc["digits"] == [1] * 10 and doc["termination"] == "length"


def test_sequence_point_and_formats():
    code, text = run("--format", "text", "sequence", "--point", "7/10,1/5")
    assert code == 0 and text.startswith("1 4 0")
    code, text = run("sequence", "--point", "7/10,1/5", "--format", "csv")
    assert code == 0 and text.splitlines()[0] == "position,digit"
    code, text = run("sequence", "--combo", "class:3,n:1", "--point", "poly=x^3-x^2+2x-1;pair=alpha,alpha-alpha2",
                     "--len", "4")
    assert code == 0 and json.loads(text)["digits"] == [0] * 8


def test_verify_command():
    code, text = run("verify", "--theorem", "1", "--A", "0:2", "--B", "1:2")
    assert code == 0 and json.loads(text)["passed"] is True
    code, text = run("verify", "--theorem", "3", "--A", "2", "--B", "2")
    assert code == 1


def test_unit_command():
    code, text = run("unit", "--poly", "x^3+x^2-1", "--format", "text")
    assert code == 0 and "class 3 n=1" in text
    code, text = run("unit", "--poly", "x^3-x-1")
    assert code == 2 and text == ""


def test_unit_error_message(capsys):
    assert main(["unit", "--poly", "x^3-x-1"]) == 2
    err = capsys.readouterr().err
    assert err.startswith("error:") and "NoRootInUnitInterval" in err


def test_bad_inputs_exit_2(capsys):
    assert main(["sequence", "--point", "0.7,0.2"]) == 2
    assert main(["--max-digit", "0", "sequence", "--point", "7/10,1/5"]) == 2
    assert "error:" in capsys.readouterr().err


def test_hermite_command():
    code, text = run("hermite", "--point", "poly=x^3-x^2+2x-1;pair=alpha,alpha-alpha2", "--rows", "6")
    doc = json.loads(text)
    assert code == 0 and doc["found"] and doc["index"] == 1
    code, text = run("hermite", "--poly", "x^3+3x^2+2x-1", "--pair", "alpha,alpha-alpha2",
                     "--rows", "2", "--max-iter", "5", "--format", "text")
    assert code == 0 and "not a proof" in text


def test_hermite_stream():
    code, text = run("hermite", "--point", "7/10,1/5", "--rows", "3", "--stream")
    lines = text.splitlines()
    assert code == 0
    for line in lines[:3]:
        json.loads(line)


def test_partition_command(tmp_path):
    svg = tmp_path / "cells.svg"
    code, text = run("partition", "--map", "e,e,e", "--depth", "2", "--cells", "3", "--svg", str(svg))
    doc = json.loads(text)
    assert code == 0 and len(doc["cells"]) == 9 and doc["vertex_count"] == 27
    assert svg.read_text().lstrip().startswith("<svg")


def test_selftest_command():
    code, text = run("selftest", "--format", "text")
    assert code == 0 and "FAIL" not in text


def test_helpers():
    assert parse_range("2:4") == [2, 3, 4] and parse_range("7") == [7]
    with pytest.raises(ValueError):
        RunConfig(max_iter=0)
    p = resolve_point(point="poly=x^3+x^2+x-1;pair=alpha,alpha2")
    F = CubicField.roots_in(parse_poly("x^3+x^2+x-1"))[0]
    assert p == cubic_pair(F)


# -- serialization -----------------------------------------------------------------


def round_trip(obj):
    back = serialize.loads(serialize.dumps(obj))
    assert serialize.dumps(back) == serialize.dumps(obj)
    return back


def test_json_round_trips():
    F = CubicField.roots_in(parse_poly("x^3+x^2-1"))[0]
    seq = trip_sequence(TRIANGLE, cubic_pair(F), 6)
    assert round_trip(seq).digits == seq.digits
    seq = round_trip(trip_sequence(TRIANGLE, make_point(Fraction(7, 10), Fraction(1, 5)), 6))
    assert seq.digits == [1, 4, 0]
    (res,) = unit_pipeline(parse_poly("x^3+x^2-1"))
    back = round_trip(res)
    assert back.form == res.form and back.v == res.v
    round_trip(verify_cell(1, 3, 2))
    round_trip(detect_periodicity(ComboSpec(3, 1), make_point(res.v, res.v - res.v * res.v)))
    round_trip(find_periodic_row(make_point(res.v, res.v - res.v * res.v), max_rows=3))
    round_trip(hermite_row(make_point(Fraction(7, 10), Fraction(1, 5)), 2))
    assert round_trip(TripMapSpec.parse("(13),(12),e")) == TripMapSpec.parse("(13),(12),e")


def test_rationals_serialize_as_strings():
    doc = json.loads(serialize.dumps(make_point(Fraction(7, 10), Fraction(1, 5))))
    assert "7/10" in json.dumps(doc)


# -- partition --------------------------------------------------------------------


@pytest.mark.parametrize("spec", NAMED_MAPS, ids=str)
def test_partition_cells_agree_with_digits(spec):
    cells = partition_cells(spec, 1, 8)
    rng = random.Random(4)
    hits = 0
    for _ in range(300):
        q = rng.randint(10, 5000)
        a, b = sorted(rng.sample(range(1, q), 2))
        x, y = Fraction(b, q), Fraction(a, q)
        inside = [c for c in cells if c.contains(x, y)]
        assert len(inside) <= 1
        if inside:
            try:
                assert digit_of(spec, make_point(x, y), 50) == inside[0].path[0]
            except (NoDigit, DegenerateOrbit):
                raise AssertionError("a point inside a cell has that digit")
            hits += 1
    assert hits > 0


def test_render_svg_has_one_polygon_per_cell():
    cells = partition_cells(TRIANGLE, 1, 5)
    assert render_svg(cells).count("<polygon") == 5

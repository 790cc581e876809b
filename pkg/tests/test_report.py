import json
from fractions import Fraction as F

import pytest

from qmock.report import (
    Discrepancy,
    Verdict,
    dumps,
    format_rational,
    parse_rational,
    series_from_json,
    series_to_json,
)
from qmock.series import QSeries


def test_rational_strings():
    assert format_rational(F(-6, 4)) == "-3/2"
    assert format_rational(5) == "5/1"
    assert parse_rational("-3/2") == F(-3, 2)


def test_series_round_trip():
    s = QSeries(2, -3, 7, [F(1, 3), 0, F(-2), 0, 0, 5, F(7, 11), 0, 1, 0])
    data = json.loads(dumps(series_to_json(s)))
    assert series_from_json(data) == s


def test_verdict_invariants():
    with pytest.raises(ValueError):
        Verdict("x", "fail", 10)
    with pytest.raises(ValueError):
        Verdict("x", "pass", 10, Discrepancy(F(1), F(0), F(1)))
    with pytest.raises(ValueError):
        Verdict("x", "maybe", 10)


def test_verdict_json():
    v = Verdict("x", "fail", F(5, 2), Discrepancy(F(1, 2), F(1), F(-1)))
    assert v.to_dict() == {
        "id": "x",
        "status": "fail",
        "order": "5/2",
        "discrepancy": {"exponent": "1/2", "lhs": "1/1", "rhs": "-1/1"},
    }
    assert "message" not in v.to_dict()
    assert Verdict("y", "error", None, message="boom").to_dict()["message"] == "boom"


def test_dumps_is_key_sorted():
    assert dumps({"b": 1, "a": 2}).index('"a"') < dumps({"b": 1, "a": 2}).index('"b"')

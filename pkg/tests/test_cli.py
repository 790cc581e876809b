import json
import subprocess
import sys

import pytest

from qmock.cli import main
from qmock.report import series_from_json
from qmock.dsl import evaluate


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def usage(capsys, *argv):
    with pytest.raises(SystemExit) as info:
        main(list(argv))
    return info.value.code, capsys.readouterr().err


class TestEval:
    def test_text(self, capsys):
        code, out, _ = run(capsys, "eval", "--order", "5", "1/J(1)")
        assert code == 0
        assert "5" in out and "q^4" in out

    def test_json_round_trip(self, capsys):
        code, out, _ = run(capsys, "eval", "--order", "20", "--format", "json", "JB(1,2)")
        assert code == 0
        assert series_from_json(json.loads(out)) == evaluate("JB(1,2)", 20)

    def test_coefficients_are_exact_strings(self, capsys):
        _, out, _ = run(capsys, "eval", "--order", "3", "--format", "json", "1/2*J(1)")
        data = json.loads(out)
        assert data["coeffs"][:2] == ["1/2", "-1/2"]

    def test_default_order_from_environment(self, capsys, monkeypatch):
        monkeypatch.setenv("QMOCK_DEFAULT_ORDER", "7")
        _, out, _ = run(capsys, "eval", "--format", "json", "J(1)")
        assert series_from_json(json.loads(out)).precision == 7

    def test_builtin_default_order(self, capsys, monkeypatch):
        monkeypatch.delenv("QMOCK_DEFAULT_ORDER", raising=False)
        _, out, _ = run(capsys, "eval", "--format", "json", "J(1)")
        assert series_from_json(json.loads(out)).precision == 100

    def test_syntax_error_points_at_offset(self, capsys):
        code, _, err = run(capsys, "eval", "J(1")
        assert code == 2
        assert err.splitlines()[-1] == "     ^"

    def test_evaluation_error(self, capsys):
        code, _, err = run(capsys, "eval", "--order", "5", "1/(J(1)-J(1))")
        assert code == 3 and "offset 3" in err


class TestCompare:
    def test_pass(self, capsys):
        code, out, _ = run(capsys, "compare", "--order", "200", "J(1,2)", "J(1)^2/J(2)")
        assert code == 0 and out.startswith("PASS")

    def test_fail_reports_first_mismatch(self, capsys):
        code, out, _ = run(capsys, "compare", "--order", "10", "--format", "json", "1+q^3", "1")
        assert code == 1
        assert json.loads(out) == {
            "id": "compare",
            "status": "fail",
            "order": 10,
            "discrepancy": {"exponent": "3/1", "lhs": "1/1", "rhs": "0/1"},
        }

    def test_fractional_order(self, capsys):
        _, out, _ = run(capsys, "compare", "--order", "7/2", "--format", "json", "q^1/2", "q^1/2")
        assert json.loads(out)["order"] == "7/2"

    def test_error_verdict(self, capsys):
        code, out, _ = run(capsys, "compare", "--order", "5", "--format", "json", "1/j(q;1)", "1")
        assert code == 3 and json.loads(out)["status"] == "error"

    def test_parse_error_on_rhs(self, capsys):
        code, _, _ = run(capsys, "compare", "1", "1+")
        assert code == 2


def test_coeff(capsys):
    code, out, _ = run(capsys, "coeff", "1/J(1)", "44")
    assert code == 0 and out.strip() == "75175"
    _, out, _ = run(capsys, "coeff", "--format", "json", "1/2*q^1/2", "1/2")
    assert json.loads(out) == {"exponent": "1/2", "coefficient": "1/2"}


class TestSuite:
    def test_text_summary(self, capsys):
        code, out, _ = run(capsys, "suite", "ramanujan")
        assert code == 0 and out.splitlines()[-1] == "6/6 passed"

    def test_json_is_deterministic(self, capsys):
        _, first, _ = run(capsys, "suite", "h1", "--format", "json")
        _, second, _ = run(capsys, "suite", "h1", "--format", "json")
        assert first == second
        assert all(v["status"] == "pass" for v in json.loads(first))

    def test_order_override(self, capsys):
        _, out, _ = run(capsys, "suite", "lemmaA", "--order", "40", "--format", "json")
        assert json.loads(out)[0]["order"] == 40

    def test_p_option(self, capsys):
        code, out, _ = run(capsys, "suite", "theta-only", "--p", "7", "--order", "120", "--format", "json")
        assert code == 0 and {v["id"].split("/")[1] for v in json.loads(out)} == {"p=7"}

    @pytest.mark.parametrize(
        "argv",
        [["suite", "nope"], ["suite", "theorem2", "--p", "4"], ["suite", "h1", "--p", "3"]],
    )
    def test_bad_suite_arguments(self, capsys, argv):
        code, _, err = run(capsys, *argv)
        assert code == 2 and err.startswith("qmock:")


@pytest.mark.parametrize(
    "argv",
    [[], ["frobnicate"], ["eval"], ["eval", "--order", "x", "q"], ["eval", "--format", "yaml", "q"]],
)
def test_usage_errors(capsys, argv):
    code, err = usage(capsys, *argv)
    assert code == 2 and "usage" in err


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "qmock", "compare", "--order", "30", "JB(0,1)", "2*J(2)^2/J(1)"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert proc.stdout.startswith("PASS")

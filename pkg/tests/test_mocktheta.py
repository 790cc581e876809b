import pytest

from qmock.dsl import evaluate, parse
from qmock.errors import InvalidP
from qmock.mocktheta import (
    Q8_DISSECTION,
    THEOREM1,
    g,
    mock_residues,
    q8_form_check,
    theorem1_check,
    theorem1_rhs,
    theorem2_mock_part,
    theorem2_rhs,
    theta_only_progressions,
    v0,
    v0_appell,
    v0_eulerian1,
    v0_eulerian2,
)
from qmock.series import QSeries, equal_to_order


@pytest.fixture(scope="module")
def v400():
    return v0_eulerian1(408)


def test_first_coefficients():
    s = v0_eulerian1(10)
    assert [s.coefficient(n) for n in range(4)] == [1, 2, 4, 4]
    assert v0_eulerian2(10).coefficient(3) == 4
    assert v0_appell(10).coefficient(2) == 4
    assert g(0) == 1 and g(1) == 2


def test_three_representations_agree():
    a, b, c = (v0(200, tag) for tag in ("eulerian1", "eulerian2", "appell"))
    assert equal_to_order(a, b, 200) and equal_to_order(a, c, 200)


def test_appell_form_has_no_polar_part():
    assert v0_appell(50).valuation >= 0


def test_unknown_representation():
    with pytest.raises(ValueError):
        v0(10, "eulerian3")


def test_identity_table_parses():
    for ident in THEOREM1 + Q8_DISSECTION:
        parse(ident.text)
    assert [i.mock_part is not None for i in THEOREM1] == [False] * 7 + [True]


@pytest.mark.parametrize("r", range(8))
def test_theorem1(r, v400):
    verdict = theorem1_check(r, 50, v400)
    assert verdict.passed, verdict.to_text()


def test_constant_terms_match_g():
    assert theorem1_rhs(1, 5).coefficient(0) == 2 == g(1)
    assert theorem1_rhs(3, 5).coefficient(0) == 4 == g(3)


def test_residue_five_closed_form():
    expected = evaluate("8*JB(2,4)*JB(1,2)*JB(2,8)*JB(4,16)/J(1)^3", 50)
    assert theorem1_rhs(5, 50) == expected


def test_dissection_reassembles(v400):
    parts = QSeries.zero(400)
    for r in range(8):
        parts = parts + theorem1_rhs(r, 50).inflate(8).shift(r)
    assert equal_to_order(parts, v400, 400)


@pytest.mark.parametrize("r", range(8))
def test_q8_forms(r):
    verdict = q8_form_check(r, 400)
    assert verdict.passed, verdict.to_text()


@pytest.mark.parametrize("p", [3, 5])
def test_theorem2(p, v400):
    assert equal_to_order(theorem2_rhs(p, 400), v400, 400)


@pytest.mark.parametrize("p,residues", [(5, {15, 31, 39}), (3, {15, 23})])
def test_mock_residues(p, residues):
    assert mock_residues(p) == residues == theta_only_progressions(p)


@pytest.mark.parametrize("p", [3, 5])
def test_mock_part_support(p):
    mock = theorem2_mock_part(p, 400)
    support = {int(e) % (8 * p) for e, _ in mock.terms()}
    assert support == mock_residues(p)


def test_residue_set_size_bounded():
    for p in (3, 5, 7, 9, 11, 21):
        assert len(mock_residues(p)) <= p


def test_invalid_p():
    with pytest.raises(InvalidP):
        theorem2_rhs(4, 10)
    with pytest.raises(InvalidP):
        theta_only_progressions(1)


def test_bad_residue():
    with pytest.raises(ValueError):
        theorem1_rhs(8, 10)

import pytest

from qmock.dsl import evaluate
from qmock.partitions import (
    congruence_scan,
    dyson_classes_equal,
    partition_count,
    partitions,
    rank,
    rank_difference_series,
    rank_tally,
)
from qmock.series import equal_to_order
from qmock.theta import J


def test_partitions_of_four():
    assert list(partitions(4)) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert [rank(p) for p in partitions(4)] == [3, 1, 0, -1, -3]


def test_small_cases():
    assert list(partitions(0)) == [()]
    assert partition_count(0) == 1
    assert partition_count(9) == 30


@pytest.mark.parametrize("n", range(0, 26))
def test_enumeration_matches_recurrence(n):
    ps = list(partitions(n))
    assert len(ps) == len(set(ps)) == partition_count(n)
    assert all(sum(p) == n and list(p) == sorted(p, reverse=True) for p in ps)


def test_recurrence_matches_series():
    s = J(1).expand(51).invert()
    assert [partition_count(n) for n in range(51)] == [s.coefficient(n) for n in range(51)]


def test_rank_extremes():
    assert rank((7,)) == 6
    assert rank((1,) * 7) == -6


def test_four_in_five_classes():
    assert rank_tally(4, 5).counts == (1, 1, 1, 1, 1)


@pytest.mark.parametrize("M", [5, 7])
def test_rank_symmetry_and_total(M):
    for n in range(0, 31):
        t = rank_tally(n, M)
        assert all(t[a] == t[M - a] for a in range(M))
        assert t.total == partition_count(n)


@pytest.mark.parametrize("m", range(0, 9))
def test_dyson_mod_five(m):
    assert dyson_classes_equal(5, 5 * m + 4)


@pytest.mark.parametrize("m", range(0, 6))
def test_dyson_mod_seven(m):
    assert dyson_classes_equal(7, 7 * m + 5)


def test_dyson_fails_off_progression():
    assert not dyson_classes_equal(5, 6)


@pytest.mark.parametrize("b", [1, 2])
def test_rank_difference_vanishes(b):
    assert rank_difference_series(0, b, 5, 4, 5, 7).is_zero()


@pytest.mark.parametrize("a,b,c,closed", [(0, 2, 1, "J(5)^2/J(1,5)"), (1, 2, 2, "J(5)^2/J(2,5)")])
def test_atkin_swinnerton_dyer(a, b, c, closed):
    assert equal_to_order(rank_difference_series(a, b, 5, c, 5, 7), evaluate(closed, 7), 7)


def test_rank_difference_bounds():
    with pytest.raises(ValueError):
        rank_difference_series(5, 0, 5, 0, 5, 3)


@pytest.mark.parametrize("t,d,count", [(5, 4, 10), (7, 5, 8), (11, 6, 5)])
def test_ramanujan_congruences(t, d, count):
    assert congruence_scan(t, d, count) == []


def test_congruence_scan_reports_failures():
    assert congruence_scan(5, 3, 3) == [0, 1, 2]


def test_negative_n():
    with pytest.raises(ValueError):
        list(partitions(-1))

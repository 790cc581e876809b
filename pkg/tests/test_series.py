from fractions import Fraction as F

import pytest

from qmock.errors import InsufficientPrecision, NonIntegralExponents, ZeroLeadingCoefficient
from qmock.partitions import partition_count
from qmock.series import QPower, QSeries, equal_to_order, monomial
from qmock.theta import J, quotient, theta_sum


def poly(*coeffs, prec=20):
    return QSeries.from_terms(dict(enumerate(coeffs)), prec)


def geometric(prec):
    return QSeries(1, 0, prec, [1] * prec)


def partition_gf(prec):
    return J(1).expand(prec).invert()


class TestMonomial:
    def test_constant(self):
        s = monomial(1, 0, 10)
        assert s.valuation == 0 and s.precision == 10
        assert list(s.terms()) == [(0, 1)]

    def test_negative_exponent(self):
        s = monomial(-2, -1, 5)
        assert s.coefficient(-1) == -2
        assert str(s) == "-2*q^(-1) + O(q^5)"

    def test_fractional_exponent_storage(self):
        s = monomial(F(1, 2), F(1, 2), 3)
        assert s.denom == 2
        assert s.coefficient(F(1, 2)) == F(1, 2)

    def test_rejects_floats(self):
        with pytest.raises(TypeError):
            monomial(0.5, 0, 3)


def test_normal_form_trims_leading_zeros():
    s = QSeries(1, -2, 5, [0, 0, 0, 3, 0, 1, 0])
    assert (s.val, s.prec, s.coeffs) == (1, 5, (3, 0, 1, 0))
    assert s.denom == 1


def test_normal_form_reduces_denominator():
    s = QSeries(4, 0, 8, [1, 0, 0, 0, 2, 0, 0, 0])
    assert s.denom == 1 and s.coeffs == (1, 2)


def test_immutable():
    s = poly(1, 2)
    with pytest.raises(AttributeError):
        s.val = 3


class TestArithmetic:
    def test_add(self):
        assert poly(1, 1) + poly(1, -1) == poly(2)

    def test_add_takes_min_precision(self):
        a = QSeries.from_terms({0: 1, 1: 1}, 2)
        b = QSeries.from_terms({5: 1}, 10)
        assert a + b == QSeries.from_terms({0: 1, 1: 1}, 2)

    def test_scale(self):
        assert poly(1, 1).scale(F(1, 2)) == poly(F(1, 2), F(1, 2))

    def test_sub_neg(self):
        a = poly(3, 0, 1)
        assert (a - a).is_zero()
        assert -a == poly(-3, 0, -1)

    def test_telescoping_product(self):
        assert poly(1, -1, prec=30) * geometric(20) == monomial(1, 0, 20)

    def test_monomials_multiply(self):
        assert monomial(1, -1, 10) * monomial(1, 1, 10) == monomial(1, 0, 9)

    def test_product_precision_rule(self):
        a = QSeries.from_terms({2: 1}, 10)
        b = QSeries.from_terms({-1: 1, 0: 1}, 5)
        c = a * b
        assert c.precision == min(10 - 1, 5 + 2)

    def test_product_table_entry(self):
        # J(1,2) * J2 against J1^2, all three built independently
        lhs = theta_sum(J(1, 2), 100) * J(2).expand(100)
        rhs = J(1).expand(100) ** 2
        assert equal_to_order(lhs, rhs, 100)

    def test_mixed_denominators(self):
        a = monomial(1, F(1, 2), 10)
        b = monomial(1, F(1, 3), 10)
        assert (a * b).coefficient(F(5, 6)) == 1
        assert (a + b).denom == 6


class TestInvert:
    def test_geometric(self):
        assert poly(1, -1, prec=15).invert() == geometric(15)

    def test_monomial(self):
        assert monomial(1, 1, 5).invert() == monomial(1, -1, 3)

    def test_partitions_of_four(self):
        assert partition_gf(10).coefficient(4) == 5

    def test_non_unit_leading_coefficient(self):
        a = poly(2, 1, prec=12)
        assert equal_to_order(a * a.invert(), monomial(1, 0, 12), 12)
        assert a.invert().coefficient(3) == F(-1, 16)

    def test_zero_raises(self):
        with pytest.raises(ZeroLeadingCoefficient):
            QSeries.zero(10).invert()

    def test_division(self):
        assert (poly(1, 1) / poly(1, 1)).truncate(19) == monomial(1, 0, 19)


class TestInflate:
    def test_simple(self):
        assert poly(1, 1, prec=3).inflate(8) == QSeries.from_terms({0: 1, 8: 1}, 24)

    def test_negative(self):
        assert monomial(1, -1, 3).inflate(2) == monomial(1, -2, 6)

    def test_round_trip(self):
        s = partition_gf(40)
        assert s.inflate(8).inflate(F(1, 8)) == s

    def test_fractional(self):
        s = poly(1, 1, prec=4).inflate(F(1, 2))
        assert s.coefficient(F(1, 2)) == 1 and s.precision == 2


class TestDissect:
    def test_partition_progression(self):
        s = partition_gf(40).dissect(4, 5, deflate=True)
        assert [s.coefficient(n) for n in range(4)] == [5, 30, 135, 490]
        assert [partition_count(5 * n + 4) for n in range(4)] == [5, 30, 135, 490]

    def test_geometric_deflates_to_itself(self):
        assert geometric(40).dissect(1, 2, deflate=True) == geometric(20)

    def test_ramanujan_first_generating_function(self):
        lhs = partition_gf(5 * 50 + 4).dissect(4, 5, deflate=True)
        rhs = quotient([(J(5), 5), (J(1), -6)], 50, coeff=5)
        assert equal_to_order(lhs, rhs, 50)

    def test_fractional_exponents_rejected(self):
        with pytest.raises(NonIntegralExponents):
            monomial(1, F(1, 2), 3).dissect(0, 2)

    def test_undeflated_keeps_precision(self):
        s = geometric(10).dissect(1, 3)
        assert s.precision == 10 and [e for e, _ in s.terms()] == [1, 4, 7]


class TestCoefficient:
    def test_basic(self):
        assert poly(1, 2).coefficient(1) == 2
        assert poly(1, 2)[5] == 0
        assert monomial(1, -1, 3).coefficient(-1) == 1
        assert monomial(1, 2, 3).coefficient(-7) == 0

    def test_partitions_of_nine(self):
        assert partition_gf(20).coefficient(9) == 30

    def test_beyond_precision(self):
        with pytest.raises(InsufficientPrecision):
            poly(1, prec=3).coefficient(3)


class TestEqualToOrder:
    def test_equal(self):
        assert equal_to_order(poly(1, 1), poly(1, 1), 2)

    def test_first_discrepancy(self):
        rep = equal_to_order(poly(1, 1), poly(1, -1), 2)
        assert not rep
        assert (rep.exponent, rep.lhs, rep.rhs) == (1, 1, -1)

    def test_needs_precision(self):
        with pytest.raises(InsufficientPrecision):
            equal_to_order(poly(1, prec=3), poly(1, prec=10), 5)


def test_qpower_algebra():
    x = QPower(-1, 3)
    assert x * x == QPower(1, 6)
    assert x ** -1 == QPower(-1, -3) == x.inverse()
    assert x / QPower(1, 1) == QPower(-1, 2)
    assert str(x) == "-q^3"
    assert x.to_series(5) == monomial(-1, 3, 5)


def test_format_truncates_long_series():
    text = format(repr(partition_gf(50)))
    assert text.startswith("QSeries(1 + q + 2*q^2") and "..." in text

"""Randomized algebraic checks of the truncated series arithmetic at order 50."""

import functools
import random
from collections import Counter
from fractions import Fraction as F

from hypothesis import given, settings, strategies as st

from qmock.series import QSeries, equal_to_order, monomial

ORDER = 50
EXAMPLES = 200

small = st.fractions(min_value=-9, max_value=9, max_denominator=4)


def _coeff(rng):
    return F(rng.randint(-9, 9), rng.choice((1, 1, 2, 3, 4)))


@st.composite
def series(draw, denoms=(1, 2, 3), integral=False, unit=False):
    denom = 1 if integral else draw(st.sampled_from(denoms))
    val = draw(st.integers(-4 * denom, 4 * denom))
    prec = draw(st.integers(val + 1, ORDER * denom))
    rng = random.Random(draw(st.integers(0, 2**32)))
    density = draw(st.sampled_from((1.0, 0.5, 0.1)))
    coeffs = [_coeff(rng) if rng.random() < density else 0 for _ in range(prec - val)]
    if unit:
        coeffs[0] = draw(small.filter(bool))
    return QSeries(denom, val, prec, coeffs)


def agree(a, b):
    n = min(a.precision, b.precision)
    return bool(equal_to_order(a, b, n))


def schoolbook(a, b):
    terms = {}
    for ea, ca in a.terms():
        for eb, cb in b.terms():
            terms[ea + eb] = terms.get(ea + eb, 0) + ca * cb
    prec = min(a.precision + b.valuation, b.precision + a.valuation)
    return QSeries.from_terms(terms, prec)


def extend(s, extra):
    """Same known coefficients as ``s`` but garbage at and above its precision."""
    terms = dict(s.terms())
    step = F(1, s.denom)
    for i, c in enumerate(extra):
        terms[s.precision + i * step] = c
    return QSeries.from_terms(terms, s.precision + len(extra) * step)


CASES = Counter()


def counted(fn):
    @functools.wraps(fn)
    def run(*args, **kwargs):
        CASES[fn.__name__] += 1
        return fn(*args, **kwargs)

    return run


common = settings(max_examples=EXAMPLES, deadline=None)


@common
@given(series(), series(), series())
@counted
def test_ring_axioms(a, b, c):
    assert agree(a + b, b + a)
    assert agree((a + b) + c, a + (b + c))
    assert agree(a * b, b * a)
    assert agree((a * b) * c, a * (b * c))
    assert agree(a * (b + c), a * b + a * c)


@common
@given(series(), series())
@counted
def test_fast_product_matches_schoolbook(a, b):
    assert a * b == schoolbook(a, b)


@common
@given(series(unit=True))
@counted
def test_invert(a):
    inv = a.invert()
    assert inv.valuation == -a.valuation
    prod = a * inv
    assert equal_to_order(prod, monomial(1, 0, prod.precision), prod.precision)


@common
@given(series(integral=True), st.integers(1, 9))
@counted
def test_dissection_partitions_series(a, m):
    total = QSeries.zero(a.precision)
    for r in range(m):
        total = total + a.dissect(r, m)
    assert total == a


@common
@given(series(integral=True), st.integers(1, 9), st.data())
@counted
def test_deflate_inflate_consistency(a, m, data):
    r = data.draw(st.integers(0, m - 1))
    back = a.dissect(r, m, deflate=True).inflate(m).shift(r)
    assert agree(back, a.dissect(r, m))
    assert back.precision >= a.precision


@common
@given(series(), series(), st.lists(small, min_size=1, max_size=6))
@counted
def test_product_never_overstates_precision(a, b, extra):
    ref = a * b
    noisy = extend(a, extra) * extend(b, extra[::-1])
    assert noisy.truncate(ref.precision) == ref


@common
@given(series(unit=True), st.lists(small, min_size=1, max_size=6))
@counted
def test_inverse_never_overstates_precision(a, extra):
    ref = a.invert()
    assert extend(a, extra).invert().truncate(ref.precision) == ref


@common
@given(series(integral=True), st.integers(1, 6), st.lists(small, min_size=1, max_size=12), st.data())
@counted
def test_substitutions_never_overstate_precision(a, m, extra, data):
    r = data.draw(st.integers(0, m - 1))
    noisy = extend(a, extra)
    ref = a.dissect(r, m, deflate=True)
    assert noisy.dissect(r, m, deflate=True).truncate(ref.precision) == ref
    assert noisy.inflate(m).truncate(a.inflate(m).precision) == a.inflate(m)

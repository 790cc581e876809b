"""Appell functions ``m(x, z; q^M)`` at signed q-power arguments.

The bilateral sum is expanded term by term.  Each denominator
``1 - s q^e`` becomes a geometric series in ``q^e`` when ``e > 0``, in
``q^-e`` after pulling out ``-s q^-e`` when ``e < 0``, and the constant
``1/2`` when ``e = 0, s = -1``.  ``e = 0, s = +1`` is a genuine pole.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateSpecialization, ExactPole, InvalidP, ZeroTheta
from .series import QPower, QSeries, RationalLike, as_fraction
from .theta import J, Jbar, ThetaSpec, integer_window, quotient

__all__ = [
    "AppellSpec",
    "appell_expand",
    "change_z_correction",
    "level_p_decomposition",
    "check_p",
]


def check_p(p: int) -> int:
    if not isinstance(p, int) or p < 3 or p % 2 == 0:
        raise InvalidP(f"p must be an odd integer >= 3, got {p!r}")
    return p


@dataclass(frozen=True)
class AppellSpec:
    """Parameters of ``m(x, z; q^modulus)``."""

    x: QPower
    z: QPower
    modulus: Fraction

    def __post_init__(self):
        object.__setattr__(self, "modulus", as_fraction(self.modulus))
        if self.modulus <= 0:
            raise ValueError("Appell modulus must be positive")
        r = 1 - (self.x.exp + self.z.exp) / self.modulus
        if r.denominator == 1 and self.x.sign * self.z.sign == 1:
            raise ExactPole(f"denominator 1 - q^(M(r-1)) x z vanishes at r = {r}")

    @property
    def theta(self) -> ThetaSpec:
        return ThetaSpec(self.z, self.modulus)

    def numerator_exponent(self, r: int) -> Fraction:
        return self.modulus * (r * (r - 1) // 2) + r * self.z.exp

    def denominator_exponent(self, r: int) -> Fraction:
        return self.modulus * (r - 1) + self.x.exp + self.z.exp

    def term_valuation(self, r: int) -> Fraction:
        """Lowest exponent contributed by the ``r``-th term of the bilateral sum."""
        e = self.denominator_exponent(r)
        return self.numerator_exponent(r) + (-e if e < 0 else 0)

    def _start(self) -> int:
        return math.floor(Fraction(1, 2) - self.z.exp / self.modulus)

    def valuation_bound(self) -> Fraction:
        """A lower bound for the valuation of ``m(x, z; q^M)``."""
        v = self.theta.valuation()
        if v is None:
            raise ZeroTheta(f"{self.theta} vanishes identically")
        t = self.term_valuation
        n = self._start()
        while t(n + 1) < t(n):
            n += 1
        while t(n - 1) < t(n):
            n -= 1
        return t(n) - v

    def expand(self, prec: RationalLike) -> QSeries:
        return appell_expand(self, prec)

    def __str__(self):
        return f"m({self.x}, {self.z}; q^{self.modulus})"


def _bilateral_sum(spec: AppellSpec, prec: Fraction, overshoot: int) -> tuple[QSeries, Fraction]:
    """The bilateral sum below ``q^prec`` and the least term valuation used."""
    t = spec.term_valuation
    rs = integer_window(t, prec, start=spec._start(), margin=1 + overshoot)
    s = spec.x.sign * spec.z.sign
    exps = [spec.numerator_exponent(r) for r in rs] + [spec.denominator_exponent(r) for r in rs]
    denom = 1
    for e in exps + [prec]:
        denom = denom * e.denominator // math.gcd(denom, e.denominator)
    stop = int(prec * denom)
    if not rs:
        return QSeries.zero(prec), prec
    low = min(t(r) for r in rs)
    base = int(min(low, prec) * denom)
    twice = [0] * (stop - base)
    for r in rs:
        sign = (-spec.z.sign) ** (r % 2)
        a = int(spec.numerator_exponent(r) * denom)
        e = int(spec.denominator_exponent(r) * denom)
        if e == 0:
            if a < stop:
                twice[a - base] += sign
            continue
        if e < 0:
            a, e, sign = a - e, -e, -s * sign
        k = a
        c = 2 * sign
        while k < stop:
            twice[k - base] += c
            k += e
            c *= s
    # twice holds 2 x coefficients so the e = 0 halves stay integral
    series = QSeries._from_ints(denom, base, stop, twice, 2)
    return series, low


def appell_expand(spec: AppellSpec, prec: RationalLike, overshoot: int = 0) -> QSeries:
    """Expand ``m(x, z; q^M)`` below ``q^prec``.

    ``overshoot`` widens the summation window by that many extra terms on
    each side; the result must not change.
    """
    prec = as_fraction(prec)
    theta = spec.theta
    v = theta.valuation()
    if v is None:
        raise ZeroTheta(f"{theta} vanishes identically")
    total, low = _bilateral_sum(spec, prec + v, overshoot)
    theta_prec = max(v + 1, prec + 2 * v - min(low, prec + v))
    inv = theta.expand(theta_prec).invert()
    return (total * inv).truncate(prec)


def change_z_correction(
    x: QPower, z0: QPower, z1: QPower, modulus: RationalLike, prec: RationalLike
) -> QSeries:
    """``z0 J_M^3 j(z1/z0) j(x z0 z1) / (j(z0) j(z1) j(x z0) j(x z1))`` at base ``q^M``.

    Equals ``m(x, z1; q^M) - m(x, z0; q^M)``.
    """
    m = as_fraction(modulus)
    T = lambda w: ThetaSpec(w, m)
    factors = [
        (J(m), 3),
        (T(z1 / z0), 1),
        (T(x * z0 * z1), 1),
        (T(z0), -1),
        (T(z1), -1),
        (T(x * z0), -1),
        (T(x * z1), -1),
    ]
    for spec, k in factors[3:]:
        if spec.is_zero():
            raise DegenerateSpecialization(f"{spec} vanishes identically")
    return quotient(factors, prec, coeff=z0.sign, shift=z0.exp)


def level_p_decomposition(z: QPower, p: int, prec: RationalLike) -> QSeries:
    """Right-hand side of the level-``p`` decomposition of ``m(1, z; q^8)``.

    The sum of ``p`` Appell functions at modulus ``8 p^2`` minus the theta
    quotient sum with ``J_(8p)^3`` in front.
    """
    check_p(p)
    prec = as_fraction(prec)
    half = (p - 1) // 2
    out = QSeries.zero(prec)
    for r in range(p):
        shift = -4 * r * (r + 1)
        spec = AppellSpec(QPower(1, 4 * p * (p - 1) - 8 * p * r), QPower(-1, 0), 8 * p * p)
        term = appell_expand(spec, prec - shift).shift(shift)
        out = out + (term if r % 2 == 0 else -term)
    for spec in (ThetaSpec(z, 8), Jbar(0, 8 * p * p), Jbar(0, 8 * p)):
        if spec.is_zero():
            raise DegenerateSpecialization(f"{spec} vanishes identically")
    for r in range(p):
        zk = z ** (r - half)
        factors = [
            (J(8 * p), 3),
            (ThetaSpec(z, 8), -1),
            (Jbar(0, 8 * p * p), -1),
            (ThetaSpec(-(z.shift(8 * r)), 8 * p), 1),
            (ThetaSpec(-((z ** p).shift(8 * p * r)), 8 * p * p), 1),
            (Jbar(0, 8 * p), -1),
            (ThetaSpec(z.shift(8 * r), 8 * p), -1),
        ]
        if factors[-1][0].is_zero():
            raise DegenerateSpecialization(f"{factors[-1][0]} vanishes identically")
        out = out - quotient(
            factors,
            prec,
            coeff=(-1) ** (r % 2) * zk.sign,
            shift=4 * r * (r - p) + zk.exp,
        )
    return out

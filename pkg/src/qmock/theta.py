"""Theta functions, q-Pochhammer products and the classical theta identities.

``j(x; q^m)`` is available two independent ways: the bilateral sum
:func:`theta_sum` (the working expansion) and the triple product
:func:`theta_prod` (the oracle).  Every ``*_residual`` / ``*_identity``
helper returns series that must agree, so callers can check them with
:func:`qmock.series.equal_to_order`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from .errors import DegenerateSpecialization, NonconvergentProduct, ZeroLeadingCoefficient
from .series import QPower, QSeries, RationalLike, as_fraction, monomial

__all__ = [
    "ThetaSpec",
    "PochSpec",
    "J",
    "Jbar",
    "theta_sum",
    "theta_prod",
    "pochhammer",
    "quotient",
    "integer_window",
    "shift_identity",
    "flip_identity",
    "flip_identity_check",
    "multiplicative_split",
    "theta_split",
    "weierstrass_residual",
    "h1_theorem_residual",
    "lemma_A_residual",
    "lemma_B1_residual",
    "lemma_B2_residual",
    "product_table",
]


def integer_window(t: Callable[[int], Fraction], bound, start: int = 0, margin: int = 1) -> range:
    """Integers ``n`` with ``t(n) < bound`` for a convex ``t``, padded by ``margin``.

    The walk first descends to the minimum and then widens in both
    directions; convexity makes the sublevel set an interval.
    """
    n = start
    if t(n + 1) < t(n):
        step = 1
    elif t(n - 1) < t(n):
        step = -1
    else:
        step = 0
    while step and t(n + step) < t(n):
        n += step
    if t(n) >= bound:
        return range(n, n)
    lo = hi = n
    while t(lo - 1) < bound:
        lo -= 1
    while t(hi + 1) < bound:
        hi += 1
    return range(lo - margin, hi + margin + 1)


def _grid(*xs: Fraction) -> int:
    d = 1
    for x in xs:
        d = d * x.denominator // math.gcd(d, x.denominator)
    return d


def _binomial_product(factors: Sequence[tuple[int, Fraction]], prec: Fraction) -> QSeries:
    """Expand ``prod (1 + c q^f)`` below ``q^prec`` for exponents ``f >= 0``."""
    if prec <= 0:
        return QSeries.zero(prec)
    denom = _grid(prec, *(f for _, f in factors))
    length = int(prec * denom)
    arr = [1] + [0] * (length - 1)
    const = 1
    for c, f in factors:
        k = int(f * denom)
        if k == 0:
            const *= 1 + c
            continue
        if k >= length:
            continue
        arr[k:] = [x + c * y for x, y in zip(arr[k:], arr[: length - k])]
    return QSeries._from_ints(denom, 0, length, [const * x for x in arr])


def _binomial_reciprocal(factors: Sequence[tuple[int, Fraction]], prec: Fraction) -> QSeries:
    """Expand ``1 / prod (1 + c q^f)`` below ``q^prec`` for exponents ``f >= 0``."""
    if prec <= 0:
        return QSeries.zero(prec)
    denom = _grid(prec, *(f for _, f in factors))
    length = int(prec * denom)
    arr = [1] + [0] * (length - 1)
    const = Fraction(1)
    for c, f in factors:
        k = int(f * denom)
        if k == 0:
            if 1 + c == 0:
                raise ZeroLeadingCoefficient("reciprocal of a product containing the factor 0")
            const /= 1 + c
            continue
        for start in range(k, length, k):
            stop = min(start + k, length)
            arr[start:stop] = [x - c * y for x, y in zip(arr[start:stop], arr[start - k : stop - k])]
    return QSeries._from_ints(denom, 0, length, arr).scale(const)


@dataclass(frozen=True)
class ThetaSpec:
    """Parameters of ``j(z; q^modulus)``."""

    z: QPower
    modulus: Fraction

    def __post_init__(self):
        object.__setattr__(self, "modulus", as_fraction(self.modulus))
        if self.modulus <= 0:
            raise ValueError("theta modulus must be positive")

    def exponent(self, n: int) -> Fraction:
        """Exponent of the ``n``-th term of the bilateral sum."""
        return self.modulus * (n * (n - 1) // 2) + n * self.z.exp

    def _start(self) -> int:
        return math.floor(Fraction(1, 2) - self.z.exp / self.modulus)

    def is_zero(self) -> bool:
        return self.z.sign == 1 and (self.z.exp / self.modulus).denominator == 1

    def valuation(self) -> Optional[Fraction]:
        """Exact valuation, or ``None`` when the theta function vanishes.

        Terms sharing an exponent pair up symmetrically and either all cancel
        (the zero case) or none do, so the minimum exponent is attained.
        """
        if self.is_zero():
            return None
        n = self._start()
        return min(self.exponent(n), self.exponent(n + 1))

    def expand(self, prec: RationalLike) -> QSeries:
        return theta_sum(self, prec)

    def __str__(self):
        return f"j({self.z}; q^{self.modulus})"


@dataclass(frozen=True)
class PochSpec:
    """Parameters of ``(x; q^step)_length``; ``length=None`` is the infinite product."""

    x: QPower
    step: Fraction
    length: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "step", as_fraction(self.step))
        if self.step <= 0:
            raise NonconvergentProduct(f"Pochhammer step q^{self.step} does not grow")
        if self.length is not None and self.length < 0:
            raise ValueError("Pochhammer length must be nonnegative")

    def _exponents(self, bound: Fraction) -> Iterable[Fraction]:
        i = 0
        while self.length is None or i < self.length:
            e = self.x.exp + i * self.step
            if self.length is None and e >= bound and e > 0:
                return
            yield e
            i += 1

    def _negative_part(self) -> tuple[int, Fraction, list[tuple[int, Fraction]]]:
        """Pull out the factors with negative exponent.

        Each is rewritten as ``1 - s q^e = -s q^e (1 - s q^-e)``; returns the
        collected sign, the exponent shift and the rewritten binomials.
        """
        s = self.x.sign
        sign, shift = 1, Fraction(0)
        negatives = []
        for e in self._exponents(Fraction(0)):
            if e >= 0:
                break
            sign *= -s
            shift += e
            negatives.append((-s, -e))
        return sign, shift, negatives

    def _binomials(self, negatives, bound: Fraction) -> list[tuple[int, Fraction]]:
        s = self.x.sign
        return list(negatives) + [(-s, e) for e in self._exponents(bound) if e >= 0]

    def valuation(self) -> Optional[Fraction]:
        shift = Fraction(0)
        for e in self._exponents(Fraction(1)):
            if e == 0 and self.x.sign == 1:
                return None
            if e < 0:
                shift += e
        return shift

    def expand(self, prec: RationalLike) -> QSeries:
        return pochhammer(self, prec)

    def expand_reciprocal(self, prec: RationalLike) -> QSeries:
        """Expand ``1 / (x; q^step)_length`` below ``q^prec`` by repeated geometric division."""
        prec = as_fraction(prec)
        sign, shift, negatives = self._negative_part()
        need = prec + shift
        return _binomial_reciprocal(self._binomials(negatives, need), need).scale(sign).shift(-shift)

    def __str__(self):
        n = "inf" if self.length is None else self.length
        return f"({self.x}; q^{self.step})_{n}"


def J(a: RationalLike, m: Optional[RationalLike] = None):
    """``J(a, m) = j(q^a; q^m)``; the one-argument form ``J(m)`` is the Euler product."""
    if m is None:
        m = as_fraction(a)
        return PochSpec(QPower(1, m), m, None)
    return ThetaSpec(QPower(1, as_fraction(a)), m)


def Jbar(a: RationalLike, m: RationalLike) -> ThetaSpec:
    """``j(-q^a; q^m)``."""
    return ThetaSpec(QPower(-1, as_fraction(a)), m)


def theta_sum(spec: ThetaSpec, prec: RationalLike) -> QSeries:
    """Expand ``sum_n (-1)^n q^(m n(n-1)/2) z^n`` below ``q^prec``."""
    prec = as_fraction(prec)
    ns = integer_window(spec.exponent, prec, start=spec._start())
    step = -spec.z.sign
    return QSeries.from_terms(((spec.exponent(n), step ** (n % 2)) for n in ns), prec)


def theta_prod(spec: ThetaSpec, prec: RationalLike) -> QSeries:
    """Expand ``(z)_inf (q^m/z)_inf (q^m)_inf`` below ``q^prec``.

    The argument is first moved into ``0 <= exp < m`` with the quasi-periodicity
    ``j(q^(mk) x) = (-1)^k q^(-m k(k-1)/2) x^(-k) j(x)`` so that every factor
    has a nonnegative exponent.
    """
    prec = as_fraction(prec)
    m, s, e = spec.modulus, spec.z.sign, spec.z.exp
    k = math.floor(e / m)
    e1 = e - k * m
    sign = (-s) ** (k % 2)
    shift = -m * (k * (k - 1) // 2) - k * e1
    need = prec - shift
    binomials = []
    f = e1
    while f < need:
        binomials.append((-s, f))
        f += m
    f = m - e1
    while f < need:
        binomials.append((-s, f))
        f += m
    f = m
    while f < need:
        binomials.append((-1, f))
        f += m
    return _binomial_product(binomials, need).scale(sign).shift(shift)


def pochhammer(spec: PochSpec, prec: RationalLike) -> QSeries:
    """Expand ``prod_(i < length) (1 - x q^(i*step))`` below ``q^prec``."""
    prec = as_fraction(prec)
    sign, shift, negatives = spec._negative_part()
    need = prec - shift
    return _binomial_product(spec._binomials(negatives, need), need).scale(sign).shift(shift)


def quotient(
    factors: Sequence[tuple[object, int]],
    prec: RationalLike,
    coeff: RationalLike = 1,
    shift: RationalLike = 0,
) -> QSeries:
    """``coeff * q^shift * prod f^k`` below ``q^prec`` for theta/Pochhammer factors.

    Each factor is expanded to exactly the relative precision the product
    needs, computed from the exact valuations of all factors.
    """
    prec = as_fraction(prec)
    coeff = as_fraction(coeff)
    total = as_fraction(shift)
    vals = []
    for obj, k in factors:
        v = obj.valuation()
        if v is None and k < 0:
            raise DegenerateSpecialization(f"{obj} vanishes identically")
        vals.append(v)
    if coeff == 0 or any(v is None and k > 0 for v, (_, k) in zip(vals, factors)):
        return QSeries.zero(prec)
    for v, (_, k) in zip(vals, factors):
        total += k * v
    rel = prec - total
    if rel <= 0:
        return QSeries.zero(prec)
    result = None
    for v, (obj, k) in zip(vals, factors):
        if k == 0:
            continue
        if k < 0 and hasattr(obj, "expand_reciprocal"):
            part = obj.expand_reciprocal(-v + rel) ** (-k)
        else:
            part = obj.expand(v + rel) ** k
        result = part if result is None else result * part
    if result is None:
        result = monomial(1, 0, rel)
    return result.scale(coeff).shift(shift).truncate(prec)


def _theta(z: QPower, m) -> ThetaSpec:
    return ThetaSpec(z, m)


def shift_identity(spec: ThetaSpec, n: int, prec: RationalLike) -> tuple[QSeries, QSeries]:
    """Both sides of ``j(q^(mn) x; q^m) = (-1)^n q^(-m n(n-1)/2) x^(-n) j(x; q^m)``."""
    m, x = spec.modulus, spec.z
    lhs = theta_sum(ThetaSpec(x.shift(m * n), m), prec)
    rhs = quotient(
        [(spec, 1)],
        prec,
        coeff=(-x.sign) ** (n % 2),
        shift=-m * (n * (n - 1) // 2) - n * x.exp,
    )
    return lhs, rhs


def flip_identity(spec: ThetaSpec, prec: RationalLike) -> tuple[QSeries, QSeries, QSeries]:
    """The three members ``j(x)``, ``j(q^m/x)``, ``-x j(1/x)`` (base ``q^m``)."""
    m, x = spec.modulus, spec.z
    first = theta_sum(spec, prec)
    second = theta_sum(ThetaSpec(x.inverse().shift(m), m), prec)
    third = quotient([(ThetaSpec(x.inverse(), m), 1)], prec, coeff=-x.sign, shift=x.exp)
    return first, second, third


def flip_identity_check(spec: ThetaSpec, prec: RationalLike) -> bool:
    a, b, c = flip_identity(spec, prec)
    return a == b == c


def multiplicative_split(spec: ThetaSpec, n: int, prec: RationalLike) -> tuple[QSeries, QSeries]:
    """``j(x; q^m)`` against ``J_m prod_(i<n) j(q^(mi) x; q^(mn)) / J_(mn)^n``."""
    if n < 1:
        raise ValueError("split order must be positive")
    m, x = spec.modulus, spec.z
    lhs = theta_sum(spec, prec)
    factors = [(J(m), 1), (J(m * n), -n)]
    factors += [(ThetaSpec(x.shift(m * i), m * n), 1) for i in range(n)]
    return lhs, quotient(factors, prec)


def theta_split(spec: ThetaSpec, parts: int, prec: RationalLike) -> tuple[QSeries, QSeries]:
    """``j(z; q^b)`` against its ``parts``-way split into thetas with base ``q^(b parts^2)``."""
    if parts < 1:
        raise ValueError("number of parts must be positive")
    b, z = spec.modulus, spec.z
    lhs = theta_sum(spec, prec)
    zm = z ** parts
    outer = (-1) ** ((parts + 1) % 2)
    rhs = QSeries.zero(prec)
    for k in range(parts):
        arg = QPower(outer * zm.sign, zm.exp + b * (parts * (parts - 1) // 2 + parts * k))
        zk = z ** k
        rhs = rhs + quotient(
            [(ThetaSpec(arg, b * parts * parts), 1)],
            prec,
            coeff=(-1) ** (k % 2) * zk.sign,
            shift=b * (k * (k - 1) // 2) + zk.exp,
        )
    return lhs, rhs


def weierstrass_residual(
    a: QPower,
    b: QPower,
    c: QPower,
    d: QPower,
    base: RationalLike,
    prec: RationalLike,
    screen: bool = True,
) -> QSeries:
    """LHS minus RHS of the three-term Weierstrass relation at base ``q^base``.

    With ``screen`` set, any specialization that makes one of the twelve theta
    factors vanish identically is rejected.
    """
    args = [a * c, a / c, b * d, b / d, a * d, a / d, b * c, b / c, a * b, a / b, c * d, c / d]
    specs = [ThetaSpec(w, base) for w in args]
    if screen:
        for s in specs:
            if s.is_zero():
                raise DegenerateSpecialization(f"{s} vanishes identically")
    lhs = quotient([(s, 1) for s in specs[0:4]], prec)
    rhs1 = quotient([(s, 1) for s in specs[4:8]], prec)
    bc = b / c
    rhs2 = quotient([(s, 1) for s in specs[8:12]], prec, coeff=bc.sign, shift=bc.exp)
    return lhs - rhs1 - rhs2


def h1_theorem_residual(x: QPower, y: QPower, base: RationalLike, prec: RationalLike) -> QSeries:
    """``j(x)j(y) - j(-xy)j(-q y/x) + x j(-q x y) j(-y/x)`` with ``q -> q^base``.

    The right-hand thetas are taken at base ``q^(2 base)``.
    """
    base = as_fraction(base)
    b2 = 2 * base
    lhs = quotient([(ThetaSpec(x, base), 1), (ThetaSpec(y, base), 1)], prec)
    r1 = quotient(
        [(ThetaSpec(-(x * y), b2), 1), (ThetaSpec(-(y / x).shift(base), b2), 1)], prec
    )
    r2 = quotient(
        [(ThetaSpec(-(x * y).shift(base), b2), 1), (ThetaSpec(-(y / x), b2), 1)],
        prec,
        coeff=x.sign,
        shift=x.exp,
    )
    return lhs - r1 + r2


def lemma_A_residual(prec: RationalLike) -> QSeries:
    """``Jb(1,8)^2 J(3,8)^2 + Jb(3,8)^2 J(1,8)^2 - Jb(0,8) J(4,8)^2 Jb(2,8)``."""
    t1 = quotient([(Jbar(1, 8), 2), (J(3, 8), 2)], prec)
    t2 = quotient([(Jbar(3, 8), 2), (J(1, 8), 2)], prec)
    t3 = quotient([(Jbar(0, 8), 1), (J(4, 8), 2), (Jbar(2, 8), 1)], prec)
    return t1 + t2 - t3


def lemma_B1_residual(prec: RationalLike) -> QSeries:
    """``Jb(16,32)^2 + q^8 Jb(0,32)^2 - Jb(8,16)^2``."""
    return (
        quotient([(Jbar(16, 32), 2)], prec)
        + quotient([(Jbar(0, 32), 2)], prec, shift=8)
        - quotient([(Jbar(8, 16), 2)], prec)
    )


def lemma_B2_residual(prec: RationalLike) -> QSeries:
    """Second identity of the pair, as LHS minus RHS."""
    return (
        quotient([(Jbar(8, 16), 2), (Jbar(0, 32), 1), (Jbar(16, 32), 1)], prec, coeff=2)
        + quotient([(Jbar(16, 32), 2), (Jbar(0, 16), 2)], prec)
        + quotient([(Jbar(0, 32), 2), (Jbar(0, 16), 2)], prec, shift=8)
        - quotient([(Jbar(8, 16), 2), (Jbar(0, 16), 2)], prec, coeff=2)
    )


def product_table(prec: RationalLike) -> dict[str, tuple[QSeries, QSeries]]:
    """The closed-form product evaluations of the standard theta shorthands.

    Each entry maps a label to ``(theta side, Euler-product side)``.
    """
    def euler(coeff, *powers):
        return quotient([(J(m), k) for m, k in powers], prec, coeff=coeff)

    sums = {
        "Jb(0,1) = 2 J2^2/J1": (theta_sum(Jbar(0, 1), prec), euler(2, (2, 2), (1, -1))),
        "2 Jb(1,4) = 2 J2^2/J1": (theta_sum(Jbar(1, 4), prec).scale(2), euler(2, (2, 2), (1, -1))),
        "Jb(1,2) = J2^5/(J1^2 J4^2)": (theta_sum(Jbar(1, 2), prec), euler(1, (2, 5), (1, -2), (4, -2))),
        "J(1,2) = J1^2/J2": (theta_sum(J(1, 2), prec), euler(1, (1, 2), (2, -1))),
        "Jb(1,3) = J2 J3^2/(J1 J6)": (theta_sum(Jbar(1, 3), prec), euler(1, (2, 1), (3, 2), (1, -1), (6, -1))),
        "J(1,4) = J1 J4/J2": (theta_sum(J(1, 4), prec), euler(1, (1, 1), (4, 1), (2, -1))),
        "J(1,6) = J1 J6^2/(J2 J3)": (theta_sum(J(1, 6), prec), euler(1, (1, 1), (6, 2), (2, -1), (3, -1))),
        "Jb(1,6) = J2^2 J3 J12/(J1 J4 J6)": (
            theta_sum(Jbar(1, 6), prec),
            euler(1, (2, 2), (3, 1), (12, 1), (1, -1), (4, -1), (6, -1)),
        ),
    }
    return sums

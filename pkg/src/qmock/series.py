"""Exact truncated Laurent series in a fractional power of q.

A :class:`QSeries` stores a dense run of exact rational coefficients for the
exponents ``val/D, (val+1)/D, ..., (prec-1)/D``; everything at or above
``prec/D`` is unknown.  Values are immutable and every operation returns a new
series in normal form (leading zeros trimmed, ``D`` as small as possible).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .errors import (
    InsufficientPrecision,
    NonIntegralExponents,
    ZeroLeadingCoefficient,
)

RationalLike = Union[int, Fraction, str]

__all__ = [
    "QPower",
    "QSeries",
    "EqualityReport",
    "monomial",
    "equal_to_order",
    "as_fraction",
]


def as_fraction(x: RationalLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted; use Fraction")
    return Fraction(x)


def _ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def _lcm(*xs: int) -> int:
    out = 1
    for x in xs:
        out = out * x // math.gcd(out, x)
    return out


def _integerize(seq: Sequence) -> tuple[list[int], int]:
    """Write a sequence of rationals as integers over one common denominator."""
    den = 1
    for c in seq:
        d = c.denominator
        if d != 1:
            den = den * d // math.gcd(den, d)
    if den == 1:
        return [c.numerator for c in seq], 1
    return [c.numerator * (den // c.denominator) for c in seq], den


def _convolve(a: Sequence[int], b: Sequence[int], length: int) -> list[int]:
    """First ``length`` coefficients of the product of two integer sequences."""
    out = [0] * length
    if length <= 0:
        return out
    nza = [(i, x) for i, x in enumerate(a[:length]) if x]
    nzb = [(j, y) for j, y in enumerate(b[:length]) if y]
    if len(nza) > len(nzb):
        a, b, nza, nzb = b, a, nzb, nza
    if not nza:
        return out
    dense_cost = len(nza) * min(len(b), length)
    sparse_cost = 2 * len(nza) * len(nzb)
    if sparse_cost < dense_cost:
        for i, x in nza:
            for j, y in nzb:
                k = i + j
                if k >= length:
                    break
                out[k] += x * y
        return out
    for i, x in nza:
        n = min(length - i, len(b))
        if x == 1:
            out[i:i + n] = [o + y for o, y in zip(out[i:i + n], b)]
        elif x == -1:
            out[i:i + n] = [o - y for o, y in zip(out[i:i + n], b)]
        else:
            out[i:i + n] = [o + x * y for o, y in zip(out[i:i + n], b)]
    return out


@dataclass(frozen=True)
class QPower:
    """The signed monomial ``sign * q**exp`` used as a theta or Appell argument."""

    sign: int
    exp: Fraction

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign!r}")
        object.__setattr__(self, "exp", as_fraction(self.exp))

    @classmethod
    def q(cls, exp: RationalLike = 1, sign: int = 1) -> "QPower":
        return cls(sign, as_fraction(exp))

    def __mul__(self, other: "QPower") -> "QPower":
        return QPower(self.sign * other.sign, self.exp + other.exp)

    def __truediv__(self, other: "QPower") -> "QPower":
        return QPower(self.sign * other.sign, self.exp - other.exp)

    def __pow__(self, n: int) -> "QPower":
        return QPower(self.sign ** (n % 2), self.exp * n)

    def __neg__(self) -> "QPower":
        return QPower(-self.sign, self.exp)

    def inverse(self) -> "QPower":
        return QPower(self.sign, -self.exp)

    def shift(self, e: RationalLike) -> "QPower":
        """Multiply by ``q**e``."""
        return QPower(self.sign, self.exp + as_fraction(e))

    def to_series(self, prec: RationalLike) -> "QSeries":
        return monomial(self.sign, self.exp, prec)

    def __str__(self) -> str:
        return ("-" if self.sign < 0 else "") + f"q^{self.exp}"


class QSeries:
    """Truncated Laurent series ``sum c_i q^((val+i)/denom) + O(q^(prec/denom))``."""

    __slots__ = ("denom", "val", "prec", "coeffs")

    def __init__(self, denom: int, val: int, prec: int, coeffs: Iterable[RationalLike]):
        coeffs = [c if isinstance(c, Fraction) else as_fraction(c) for c in coeffs]
        if denom < 1:
            raise ValueError("denominator must be positive")
        if val > prec:
            raise ValueError("valuation exceeds precision")
        if len(coeffs) != prec - val:
            raise ValueError(f"expected {prec - val} coefficients, got {len(coeffs)}")
        self._normalize(denom, val, prec, coeffs)

    def _normalize(self, denom, val, prec, coeffs):
        start = 0
        n = len(coeffs)
        while start < n and not coeffs[start]:
            start += 1
        if start == n:
            val, coeffs = prec, []
        elif start:
            val += start
            coeffs = coeffs[start:]
        g = math.gcd(denom, prec)
        if coeffs and g > 1:
            for i, c in enumerate(coeffs):
                if c:
                    g = math.gcd(g, val + i)
                    if g == 1:
                        break
        if g > 1:
            coeffs = coeffs[::g]
            denom //= g
            val //= g
            prec //= g
        object.__setattr__(self, "denom", denom)
        object.__setattr__(self, "val", val)
        object.__setattr__(self, "prec", prec)
        object.__setattr__(self, "coeffs", tuple(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("QSeries is immutable")

    # -- construction -----------------------------------------------------

    @classmethod
    def _from_ints(cls, denom: int, val: int, prec: int, ints: Sequence[int], den: int = 1) -> "QSeries":
        if den == 1:
            coeffs = [Fraction(c) for c in ints]
        else:
            coeffs = [Fraction(c, den) for c in ints]
        self = object.__new__(cls)
        self._normalize(denom, val, prec, coeffs)
        return self

    @classmethod
    def zero(cls, prec: RationalLike) -> "QSeries":
        prec = as_fraction(prec)
        return cls(prec.denominator, prec.numerator, prec.numerator, ())

    @classmethod
    def from_terms(
        cls,
        terms: Union[Mapping[RationalLike, RationalLike], Iterable[tuple[RationalLike, RationalLike]]],
        prec: RationalLike,
    ) -> "QSeries":
        """Build a series from ``(exponent, coefficient)`` pairs.

        Repeated exponents are summed; terms at or above ``prec`` are dropped.
        """
        prec = as_fraction(prec)
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Fraction, Fraction] = {}
        for e, c in items:
            e = as_fraction(e)
            if e < prec:
                acc[e] = acc.get(e, 0) + as_fraction(c)
        acc = {e: c for e, c in acc.items() if c}
        denom = _lcm(prec.denominator, *(e.denominator for e in acc))
        p = prec.numerator * (denom // prec.denominator)
        if not acc:
            return cls(denom, p, p, ())
        nums = {e.numerator * (denom // e.denominator): c for e, c in acc.items()}
        v = min(nums)
        coeffs = [Fraction(0)] * (p - v)
        for k, c in nums.items():
            coeffs[k - v] = c
        return cls(denom, v, p, coeffs)

    # -- inspection -------------------------------------------------------

    @property
    def valuation(self) -> Fraction:
        """Exponent of the lowest nonzero term (the precision if there is none)."""
        return Fraction(self.val, self.denom)

    @property
    def precision(self) -> Fraction:
        return Fraction(self.prec, self.denom)

    def is_zero(self) -> bool:
        return not self.coeffs

    def terms(self) -> Iterator[tuple[Fraction, Fraction]]:
        """Nonzero ``(exponent, coefficient)`` pairs in increasing exponent order."""
        for i, c in enumerate(self.coeffs):
            if c:
                yield Fraction(self.val + i, self.denom), c

    def coefficient(self, e: RationalLike) -> Fraction:
        e = as_fraction(e)
        if e >= self.precision:
            raise InsufficientPrecision(
                f"coefficient of q^{e} requested but series is only known below q^{self.precision}"
            )
        n = e * self.denom
        if n.denominator != 1:
            return Fraction(0)
        idx = n.numerator - self.val
        if idx < 0:
            return Fraction(0)
        return self.coeffs[idx]

    __getitem__ = coefficient

    def _regrid(self, denom: int) -> tuple[int, int, list]:
        f = denom // self.denom
        if f == 1:
            return self.val, self.prec, list(self.coeffs)
        out = [Fraction(0)] * ((self.prec - self.val) * f)
        out[::f] = self.coeffs
        return self.val * f, self.prec * f, out

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = monomial(other, 0, self.precision)
        if not isinstance(other, QSeries):
            return NotImplemented
        denom = _lcm(self.denom, other.denom)
        va, pa, ca = self._regrid(denom)
        vb, pb, cb = other._regrid(denom)
        p = min(pa, pb)
        v = min(va, vb, p)
        out = [Fraction(0)] * (p - v)
        for i in range(max(va, v), p):
            out[i - v] = ca[i - va]
        for i in range(max(vb, v), p):
            out[i - v] += cb[i - vb]
        return QSeries(denom, v, p, out)

    __radd__ = __add__

    def __neg__(self) -> "QSeries":
        return QSeries(self.denom, self.val, self.prec, [-c for c in self.coeffs])

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            return self + (-other)
        if not isinstance(other, QSeries):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: RationalLike) -> "QSeries":
        c = as_fraction(c)
        return QSeries(self.denom, self.val, self.prec, [c * x for x in self.coeffs])

    def shift(self, e: RationalLike) -> "QSeries":
        """Multiply by the exact monomial ``q**e``."""
        e = as_fraction(e)
        denom = _lcm(self.denom, e.denominator)
        v, p, c = self._regrid(denom)
        k = e.numerator * (denom // e.denominator)
        return QSeries(denom, v + k, p + k, c)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, QSeries):
            return NotImplemented
        denom = _lcm(self.denom, other.denom)
        va, pa, ca = self._regrid(denom)
        vb, pb, cb = other._regrid(denom)
        p = min(pa + vb, pb + va)
        v = va + vb
        length = p - v
        a, da = _integerize(ca[:length])
        b, db = _integerize(cb[:length])
        return QSeries._from_ints(denom, v, p, _convolve(a, b, length), da * db)

    __rmul__ = __mul__

    def invert(self) -> "QSeries":
        """Multiplicative inverse; relative precision is preserved."""
        if not self.coeffs:
            raise ZeroLeadingCoefficient(f"cannot invert a series that is zero to O(q^{self.precision})")
        length = self.prec - self.val
        a, da = _integerize(self.coeffs)
        a0 = a[0]
        if a0 in (1, -1):
            nz = [(k, -a0 * x) for k, x in enumerate(a) if k and x]
            b = [a0] + [0] * (length - 1)
            for n in range(1, length):
                s = 0
                for k, w in nz:
                    if k > n:
                        break
                    s += w * b[n - k]
                b[n] = s
            return QSeries._from_ints(self.denom, -self.val, -self.val + length, [x * da for x in b])
        # c_n = a0^(n+1) b_n stays integral: c_n = -sum_k a_k a0^(k-1) c_(n-k)
        nz = []
        pw = 1
        for k in range(1, length):
            if a[k]:
                nz.append((k, -a[k] * pw))
            pw *= a0
        c = [1] + [0] * (length - 1)
        for n in range(1, length):
            s = 0
            for k, w in nz:
                if k > n:
                    break
                s += w * c[n - k]
            c[n] = s
        coeffs = []
        pw = a0
        for x in c:
            coeffs.append(Fraction(x * da, pw))
            pw *= a0
        return QSeries(self.denom, -self.val, -self.val + length, coeffs)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1) / as_fraction(other))
        if not isinstance(other, QSeries):
            return NotImplemented
        return self * other.invert()

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.invert().scale(other)
        return NotImplemented

    def __pow__(self, n: int) -> "QSeries":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.invert() ** (-n)
        result = None
        base = self
        while True:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if not n:
                break
            base = base * base
        if result is None:
            return monomial(1, 0, self.precision - self.valuation)
        return result

    # -- substitutions ----------------------------------------------------

    def inflate(self, k: RationalLike) -> "QSeries":
        """Substitute ``q -> q**k`` for a positive rational ``k``."""
        k = as_fraction(k)
        if k <= 0:
            raise ValueError("inflation factor must be positive")
        kn, kd = k.numerator, k.denominator
        out = [Fraction(0)] * ((self.prec - self.val) * kn)
        out[::kn] = self.coeffs
        return QSeries(self.denom * kd, self.val * kn, self.prec * kn, out)

    def dissect(self, r: int, m: int, deflate: bool = False) -> "QSeries":
        """Keep the terms with exponent congruent to ``r`` mod ``m``.

        With ``deflate`` the kept term ``q^(m n + r)`` becomes ``q^n``.
        """
        if m < 1:
            raise ValueError("modulus must be positive")
        terms = []
        for e, c in self.terms():
            if e.denominator != 1:
                raise NonIntegralExponents(f"term q^{e} is not integral")
            if (e.numerator - r) % m == 0:
                terms.append((e, c))
        if not deflate:
            return QSeries.from_terms(terms, self.precision)
        prec = _ceil((self.precision - r) / m)
        return QSeries.from_terms((((e - r) / m, c) for e, c in terms), prec)

    def truncate(self, n: RationalLike) -> "QSeries":
        """Forget everything at or above ``q**n`` (no-op if already coarser)."""
        n = as_fraction(n)
        if n >= self.precision:
            return self
        denom = _lcm(self.denom, n.denominator)
        v, p, c = self._regrid(denom)
        pn = n.numerator * (denom // n.denominator)
        if pn <= v:
            return QSeries(denom, pn, pn, ())
        return QSeries(denom, v, pn, c[: pn - v])

    # -- comparison and display ------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return (self.denom, self.val, self.prec, self.coeffs) == (
            other.denom,
            other.val,
            other.prec,
            other.coeffs,
        )

    def __hash__(self):
        return hash((self.denom, self.val, self.prec, self.coeffs))

    def __repr__(self):
        return f"QSeries({format_series(self, max_terms=12)})"

    def __str__(self):
        return format_series(self)


def _fmt_exp(e: Fraction) -> str:
    return str(e) if e.denominator == 1 and e >= 0 else f"({e})"


def format_series(s: QSeries, max_terms: int | None = None) -> str:
    parts = []
    for count, (e, c) in enumerate(s.terms()):
        if max_terms is not None and count >= max_terms:
            parts.append("+ ...")
            break
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            mono = "q" if e == 1 else f"q^{_fmt_exp(e)}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        parts.append(f"{sign} {body}")
    parts.append(f"+ O(q^{_fmt_exp(s.precision)})")
    text = " ".join(parts)
    if text.startswith("+ "):
        text = text[2:]
    elif text.startswith("- "):
        text = "-" + text[2:]
    return text


def monomial(c: RationalLike, e: RationalLike, prec: RationalLike) -> QSeries:
    """The single term ``c q^e`` known to precision ``prec``."""
    return QSeries.from_terms([(as_fraction(e), as_fraction(c))], prec)


@dataclass(frozen=True)
class EqualityReport:
    """Outcome of :func:`equal_to_order`; truthy iff the series agree."""

    equal: bool
    order: Fraction
    exponent: Fraction | None = None
    lhs: Fraction | None = None
    rhs: Fraction | None = None

    def __bool__(self):
        return self.equal


def equal_to_order(a: QSeries, b: QSeries, n: RationalLike) -> EqualityReport:
    """Compare all coefficients below ``q**n``, reporting the first mismatch."""
    n = as_fraction(n)
    for name, s in (("left", a), ("right", b)):
        if s.precision < n:
            raise InsufficientPrecision(
                f"{name} series known only below q^{s.precision}, comparison needs q^{n}"
            )
    denom = _lcm(a.denom, b.denom, n.denominator)
    va, _, ca = a._regrid(denom)
    vb, _, cb = b._regrid(denom)
    stop = n.numerator * (denom // n.denominator)
    zero = Fraction(0)
    for k in range(min(va, vb), stop):
        x = ca[k - va] if k >= va else zero
        y = cb[k - vb] if k >= vb else zero
        if x != y:
            return EqualityReport(False, n, Fraction(k, denom), x, y)
    return EqualityReport(True, n)

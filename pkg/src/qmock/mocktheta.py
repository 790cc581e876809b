"""The eighth order mock theta function V0(q) and its dissection identities.

``V0(q) = sum g(n) q^n`` has three independent representations here: two
Eulerian sums built from Pochhammer products, and the pair of Appell
functions ``-q^-1 m(1, q; q^8) - q^-1 m(1, q^3; q^8)``.  Identity right-hand
sides are kept as expression-language text so that they read like the
formulas they transcribe.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .appell import AppellSpec, appell_expand, check_p
from .dsl import Evaluator, compare, parse
from .report import Verdict
from .series import QPower, QSeries, RationalLike, as_fraction, monomial
from .theta import PochSpec

__all__ = [
    "V0_TAGS",
    "DissectionIdentity",
    "THEOREM1",
    "Q8_DISSECTION",
    "v0",
    "v0_eulerian1",
    "v0_eulerian2",
    "v0_appell",
    "g",
    "theorem1_rhs",
    "theorem1_check",
    "q8_form_check",
    "theorem2_mock_text",
    "theorem2_theta_text",
    "theorem2_rhs",
    "theorem2_mock_part",
    "mock_residues",
    "theta_only_progressions",
]

V0_TAGS = ("eulerian1", "eulerian2", "appell")


def _eulerian(prec: Fraction, lead, plus: PochSpec, minus: PochSpec) -> QSeries:
    # one term of 2 * q^lead * plus / minus
    rel = prec - lead
    return (plus.expand(rel) * minus.expand_reciprocal(rel)).scale(2).shift(lead)


def v0_eulerian1(prec: RationalLike) -> QSeries:
    """``-1 + 2 sum q^(n^2) (-q; q^2)_n / (q; q^2)_n``."""
    prec = as_fraction(prec)
    out = monomial(-1, 0, prec)
    n = 0
    while n * n < prec:
        plus = PochSpec(QPower(-1, 1), 2, n)
        minus = PochSpec(QPower(1, 1), 2, n)
        out = out + _eulerian(prec, n * n, plus, minus)
        n += 1
    return out


def v0_eulerian2(prec: RationalLike) -> QSeries:
    """``-1 + 2 sum q^(2n^2) (-q^2; q^4)_n / (q; q^2)_(2n+1)``."""
    prec = as_fraction(prec)
    out = monomial(-1, 0, prec)
    n = 0
    while 2 * n * n < prec:
        plus = PochSpec(QPower(-1, 2), 4, n)
        minus = PochSpec(QPower(1, 1), 2, 2 * n + 1)
        out = out + _eulerian(prec, 2 * n * n, plus, minus)
        n += 1
    return out


def v0_appell(prec: RationalLike) -> QSeries:
    """``-q^-1 m(1, q; q^8) - q^-1 m(1, q^3; q^8)``."""
    prec = as_fraction(prec)
    one = QPower(1, 0)
    total = QSeries.zero(prec + 1)
    for c in (1, 3):
        total = total + appell_expand(AppellSpec(one, QPower(1, c), 8), prec + 1)
    return (-total).shift(-1)


_BUILDERS = {"eulerian1": v0_eulerian1, "eulerian2": v0_eulerian2, "appell": v0_appell}


def v0(prec: RationalLike, tag: str = "eulerian1") -> QSeries:
    try:
        return _BUILDERS[tag](prec)
    except KeyError:
        raise ValueError(f"unknown V0 representation {tag!r}; choose from {V0_TAGS}") from None


def g(n: int) -> Fraction:
    """Coefficient of ``q^n`` in V0, constant ``-1`` included, so ``g(0) = 1``."""
    return v0_eulerian1(n + 1).coefficient(n)


@dataclass(frozen=True)
class DissectionIdentity:
    """``sum g(8n + residue) q^n = theta_part (+ mock_part)`` as expression text."""

    residue: int
    theta_part: str
    mock_part: Optional[str] = None

    @property
    def text(self) -> str:
        if self.mock_part is None:
            return self.theta_part
        return f"{self.mock_part}+{self.theta_part}"


THEOREM1 = (
    DissectionIdentity(0, "JB(1,4)*(JB(1,2)^2*JB(2,4)+q*JB(0,2)^2*JB(0,4))/J(1)^3"),
    DissectionIdentity(1, "2*JB(1,2)^3*JB(2,8)/J(1)^3"),
    DissectionIdentity(2, "4*JB(1,4)*JB(1,2)*JB(2,8)*JB(2,4)/J(1)^3"),
    DissectionIdentity(3, "4*JB(1,2)^2*JB(2,8)^2/J(1)^3"),
    DissectionIdentity(4, "JB(1,4)*(JB(1,2)^2*JB(0,4)+JB(0,2)^2*JB(2,4))/J(1)^3"),
    DissectionIdentity(5, "8*JB(2,4)*JB(1,2)*JB(2,8)*JB(4,16)/J(1)^3"),
    DissectionIdentity(6, "8*JB(1,4)*JB(1,2)*JB(2,8)*JB(4,16)/J(1)^3"),
    DissectionIdentity(
        7,
        "1/2*q^-1/J(1)^3*(JB(1,2)^2*JB(2,4)^2+q*JB(0,4)*(2*JB(2,4)*JB(0,2)^2+JB(1,2)^2*JB(0,4)))",
        "-2*q^-1*AP(1,-1,1)",
    ),
)

# The same eight progressions before deflation, as series in q with
# q^8-theta functions: sum g(8n + r) q^(8n + r).
Q8_DISSECTION = (
    DissectionIdentity(0, "JB(8,32)*(JB(8,16)^2*JB(16,32)+q^8*JB(0,16)^2*JB(0,32))/J(8)^3"),
    DissectionIdentity(1, "q*JB(8,16)*JB(0,16)*(JB(16,32)^2+q^8*JB(0,32)^2)/J(8)^3"),
    DissectionIdentity(2, "2*q^2*JB(8,32)*JB(8,16)*JB(0,16)*JB(16,32)/J(8)^3"),
    DissectionIdentity(
        3,
        "1/2*q^3*(2*JB(8,16)^2*JB(0,32)*JB(16,32)+JB(16,32)^2*JB(0,16)^2"
        "+q^8*JB(0,32)^2*JB(0,16)^2)/J(8)^3",
    ),
    DissectionIdentity(4, "q^4*JB(8,32)*(JB(8,16)^2*JB(0,32)+JB(0,16)^2*JB(16,32))/J(8)^3"),
    DissectionIdentity(5, "2*q^5*JB(16,32)*JB(8,16)*JB(0,16)*JB(0,32)/J(8)^3"),
    DissectionIdentity(6, "2*q^6*JB(8,32)*JB(8,16)*JB(0,16)*JB(0,32)/J(8)^3"),
    DissectionIdentity(
        7,
        "1/2*q^-1/J(8)^3*(JB(8,16)^2*JB(16,32)^2"
        "+q^8*JB(0,32)*(2*JB(16,32)*JB(0,16)^2+JB(8,16)^2*JB(0,32)))",
        "-2*q^-1*AP(1,-1,8)",
    ),
)


def _check_residue(r: int) -> int:
    if not isinstance(r, int) or not 0 <= r < 8:
        raise ValueError(f"residue must be in 0..7, got {r!r}")
    return r


def theorem1_rhs(r: int, prec: RationalLike) -> QSeries:
    """Right-hand side for ``sum g(8n + r) q^n``, below ``q^prec``."""
    return Evaluator().evaluate(parse(THEOREM1[_check_residue(r)].text), prec)


def theorem1_check(r: int, prec: RationalLike, v0_series: Optional[QSeries] = None) -> Verdict:
    """Compare the deflated ``r``-th progression of V0 with :func:`theorem1_rhs`.

    ``v0_series`` may be supplied (precision at least ``8 prec + r``) to share
    one V0 expansion across residues.
    """
    prec = as_fraction(prec)
    _check_residue(r)
    need = 8 * prec + r
    if v0_series is None:
        v0_series = v0_eulerian1(need)
    lhs = v0_series.truncate(need).dissect(r, 8, True)
    return compare(lhs, THEOREM1[r].text, prec, id=f"theorem1/r={r}")


def q8_form_check(r: int, prec: RationalLike) -> Verdict:
    """Undeflated form versus ``q^r * inflate(theorem1_rhs(r), 8)``, below ``q^prec``."""
    _check_residue(r)
    lhs = Q8_DISSECTION[r].text
    rhs = f"q^{r}*inflate({THEOREM1[r].text},8)"
    return compare(lhs, rhs, prec, id=f"q8-form/r={r}")


def theorem2_mock_text(p: int) -> str:
    check_p(p)
    half = (p - 1) // 2
    terms = []
    for r in range(p):
        x = 8 * p * (half - r)
        sign = "-" if r % 2 else "+"
        terms.append(f"{sign}q^{-(2 * r + 1) ** 2}*AP(q^{x},-1,{8 * p * p})")
    return "-2*(" + "".join(terms).lstrip("+") + ")"


def theorem2_theta_text(p: int) -> str:
    check_p(p)
    half = (p - 1) // 2
    blocks = []
    for c in (1, 3):
        terms = []
        for r in range(p):
            a = 8 * r + c
            e = 4 * r * (r - p) - 1 + c * (r - half)
            sign = "-" if r % 2 else "+"
            terms.append(f"{sign}q^{e}*JB({a},{8 * p})*JB({p * a},{8 * p * p})/J({a},{8 * p})")
        blocks.append(
            f"J({8 * p})^3/(J({c},8)*JB(0,{8 * p * p})*JB(0,{8 * p}))*("
            + "".join(terms).lstrip("+")
            + ")"
        )
    return "+".join(blocks)


def theorem2_mock_part(p: int, prec: RationalLike) -> QSeries:
    return Evaluator().evaluate(parse(theorem2_mock_text(p)), prec)


def theorem2_rhs(p: int, prec: RationalLike) -> QSeries:
    """Level-``p`` decomposition of V0: Appell sum plus two theta double sums."""
    text = theorem2_mock_text(p) + "+" + theorem2_theta_text(p)
    return Evaluator().evaluate(parse(text), prec)


def mock_residues(p: int) -> frozenset[int]:
    """Residues ``-(2r+1)^2 mod 8p``, the only ones the level-``p`` mock part can reach."""
    check_p(p)
    return frozenset((-(2 * r + 1) ** 2) % (8 * p) for r in range(p))


def theta_only_progressions(p: int) -> frozenset[int]:
    """Residues mod ``8p`` that may receive mock contributions.

    Every progression ``8pn + alpha`` with ``alpha`` outside this set is
    given by theta quotients alone.
    """
    return mock_residues(p)

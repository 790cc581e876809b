"""Named verification batteries.

Every suite is a function returning verdicts in a fixed order; random
specializations come from a seeded generator so runs are reproducible.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .appell import AppellSpec, appell_expand, change_z_correction, check_p, level_p_decomposition
from .dsl import compare, evaluate
from .errors import DegenerateSpecialization, QMockError, UnknownSuite
from .mocktheta import (
    mock_residues,
    q8_form_check,
    theorem1_check,
    theorem2_mock_text,
    theorem2_rhs,
    theorem2_theta_text,
    v0_appell,
    v0_eulerian1,
    v0_eulerian2,
)
from .partitions import congruence_scan, partition_count, rank_difference_series
from .report import Discrepancy, Verdict
from .series import QPower, QSeries, as_fraction
from .theta import (
    Jbar,
    J,
    ThetaSpec,
    h1_theorem_residual,
    lemma_A_residual,
    lemma_B1_residual,
    lemma_B2_residual,
    multiplicative_split,
    product_table,
    shift_identity,
    flip_identity,
    theta_prod,
    theta_split,
    theta_sum,
    weierstrass_residual,
)

__all__ = ["SUITES", "DEFAULT_ORDERS", "run_suite", "suite_names"]

SEED = 20230829


def _guard(id: str, order, thunk: Callable[[], Verdict]) -> Verdict:
    try:
        return thunk()
    except QMockError as exc:
        return Verdict(id, "error", as_fraction(order), message=f"{type(exc).__name__}: {exc}")


def _pair(id: str, lhs: Callable[[], QSeries], rhs: Callable[[], QSeries], order) -> Verdict:
    return _guard(id, order, lambda: compare(lhs(), rhs(), order, id=id))


def _zero(id: str, residual: Callable[[], QSeries], order) -> Verdict:
    return _pair(id, residual, lambda: QSeries.zero(order), order)


def _both(id: str, sides: Callable[[], tuple[QSeries, QSeries]], order) -> Verdict:
    def run():
        a, b = sides()
        return compare(a, b, order, id=id)

    return _guard(id, order, run)


def _qp(s: int, e) -> str:
    return ("-" if s < 0 else "") + f"q^{e}"


# -- theta preliminaries ------------------------------------------------------


def prelim_products(order) -> list[Verdict]:
    table = product_table(order)
    return [compare(a, b, order, id=f"prelim-products/{label}") for label, (a, b) in table.items()]


def triple_product_grid(order, moduli: Iterable[int] = range(1, 13)) -> list[Verdict]:
    out = []
    for m in moduli:
        for a in range(-2 * m, 2 * m + 1):
            for s in (1, -1):
                spec = ThetaSpec(QPower(s, a), m)
                out.append(
                    _pair(f"triple-product/{spec}", lambda: theta_sum(spec, order), lambda: theta_prod(spec, order), order)
                )
    return out


def shift_flip(order) -> list[Verdict]:
    out = []
    cases = [
        (Jbar(1, 1), 1),
        (Jbar(1, 8), 1),
        (J(1, 5), 2),
        (J(2, 5), -1),
        (Jbar(3, 7), -2),
        (ThetaSpec(QPower(-1, Fraction(1, 2)), 3), 3),
        (J(1, 1), 0),
    ]
    for spec, n in cases:
        out.append(_both(f"shift/{spec}/n={n}", lambda: shift_identity(spec, n, order), order))
    flips = [Jbar(0, 1), J(2, 5), Jbar(1, 4), J(3, 8), Jbar(5, 3), ThetaSpec(QPower(1, Fraction(5, 2)), 5)]
    for spec in flips:
        members = lambda: flip_identity(spec, order)
        out.append(_both(f"flip/{spec}/first=second", lambda: members()[:2], order))
        out.append(_both(f"flip/{spec}/first=third", lambda: members()[::2], order))
    return out


def jsplit(order) -> list[Verdict]:
    out = []
    for n in (1, 2, 3):
        for spec in (J(1, 1), Jbar(1, 2), J(2, 5)):
            out.append(_both(f"multiplicative-split/{spec}/n={n}", lambda: multiplicative_split(spec, n, order), order))
    out.append(
        _guard(
            "multiplicative-split/J(1,8)^2 J(3,8)^2",
            order,
            lambda: compare(
                "J(1,8)^2*J(3,8)^2",
                "J(1,4)^2*J(8)^4/J(4)^2",
                order,
                id="multiplicative-split/J(1,8)^2 J(3,8)^2",
            ),
        )
    )
    for parts in (1, 2, 3, 4):
        for spec in (Jbar(1, 2), J(1, 1), Jbar(0, 1), J(2, 3), ThetaSpec(QPower(-1, 3), 2)):
            out.append(_both(f"theta-split/{spec}/parts={parts}", lambda: theta_split(spec, parts, order), order))
    # the two specializations written out by hand, base q
    for s in (1, -1):
        for a in (0, 1, 2, -1):
            z = _qp(s, a)
            sg = "-" if s > 0 else "+"
            two = f"j(-q^{1 + 2 * a};4){sg}q^{a}*j(-q^{3 + 2 * a};4)"
            four = (
                f"j(-q^{6 + 4 * a};16){sg}q^{a}*j(-q^{10 + 4 * a};16)"
                f"+q^{1 + 2 * a}*j(-q^{14 + 4 * a};16){sg}q^{3 + 3 * a}*j(-q^{18 + 4 * a};16)"
            )
            for label, rhs in (("n=2", two), ("n=4", four)):
                id = f"jsplit-{label}/z={z}"
                out.append(_guard(id, order, lambda: compare(f"j({z};1)", rhs, order, id=id)))
    return out


def _random_power(rng: random.Random, low: int, high: int) -> QPower:
    return QPower(rng.choice((1, -1)), rng.randint(low, high))


def weierstrass(order, count: int = 20) -> list[Verdict]:
    rng = random.Random(SEED)
    out = []
    while len(out) < count:
        a, b, c, d = (_random_power(rng, -6, 6) for _ in range(4))
        try:
            weierstrass_residual(a, b, c, d, 5, 1)
        except DegenerateSpecialization:
            continue
        id = f"weierstrass/a={a},b={b},c={c},d={d},base=5"
        out.append(_zero(id, lambda: weierstrass_residual(a, b, c, d, 5, order), order))
    a, b, c, d = QPower(-1, 4), QPower(-1, 3), QPower(1, 3), QPower(-1, 0)
    out.append(_zero("weierstrass/lemma-A instance", lambda: weierstrass_residual(a, b, c, d, 8, order), order))
    out.append(
        _zero("weierstrass/b=d unscreened", lambda: weierstrass_residual(a, b, c, b, 8, order, screen=False), order)
    )
    return out


def h1(order, count: int = 12) -> list[Verdict]:
    rng = random.Random(SEED + 1)
    cases = [
        (QPower(-1, 8), QPower(-1, 8), 16),
        (QPower(1, 1), QPower(1, 3), 8),
        (QPower(-1, 2), QPower(-1, 2), 5),
    ]
    while len(cases) < count:
        base = rng.randint(1, 6)
        x, y = _random_power(rng, -base, 2 * base), _random_power(rng, -base, 2 * base)
        if ThetaSpec(x, base).is_zero() or ThetaSpec(y, base).is_zero():
            continue
        cases.append((x, y, base))
    return [
        _zero(f"h1/x={x},y={y},base={base}", lambda: h1_theorem_residual(x, y, base, order), order)
        for x, y, base in cases
    ]


def lemma_a(order) -> list[Verdict]:
    return [_zero("lemmaA", lambda: lemma_A_residual(order), order)]


def lemma_b(order) -> list[Verdict]:
    steps = [
        ("lemmaB/rearrangement Jb(0,32) Jb(16,32)", "JB(0,32)*JB(16,32)", "JB(0,16)*JB(16,64)"),
        ("lemmaB/rearrangement Jb(0,16)", "JB(0,16)", "2*JB(16,64)"),
    ]
    out = [
        _zero("lemmaB/B1", lambda: lemma_B1_residual(order), order),
        _zero("lemmaB/B2", lambda: lemma_B2_residual(order), order),
    ]
    for id, lhs, rhs in steps:
        out.append(_guard(id, order, lambda: compare(lhs, rhs, order, id=id)))
    return out


# -- Appell functions ---------------------------------------------------------


def _appell(x, z, M, order):
    return appell_expand(AppellSpec(x, z, M), order)


CHANGE_Z_GRID = [
    (QPower(1, 0), QPower(-1, 0), QPower(1, 1), 8),
    (QPower(1, 0), QPower(-1, 0), QPower(1, 3), 8),
    (QPower(1, 0), QPower(1, 1), QPower(1, 3), 8),
    (QPower(1, 1), QPower(-1, 0), QPower(1, 2), 5),
    (QPower(-1, 2), QPower(1, 1), QPower(-1, 3), 7),
    (QPower(1, 0), QPower(-1, 1), QPower(1, Fraction(1, 2)), 1),
    (QPower(-1, 1), QPower(1, Fraction(1, 2)), QPower(1, 2), 3),
    (QPower(1, 3), QPower(-1, 4), QPower(1, 1), 6),
]


def changing_z(order) -> list[Verdict]:
    out = []
    for x, z0, z1, M in CHANGE_Z_GRID:
        id = f"changing-z/x={x},z0={z0},z1={z1},M={M}"
        out.append(
            _pair(
                id,
                lambda: _appell(x, z1, M, order) - _appell(x, z0, M, order),
                lambda: change_z_correction(x, z0, z1, M, order),
                order,
            )
        )
    for c in (1, 3):
        id = f"changing-z/m(1,q^{c};q^8)-m(1,-1;q^8)"
        text = f"AP(1,q^{c},8)-AP(1,-1,8)"
        closed = f"-J(8)^3*JB({c},8)^2/(J({c},8)^2*JB(0,8)^2)"
        out.append(_guard(id, order, lambda: compare(text, closed, order, id=id)))
    one = QPower(1, 0)
    out.append(
        _pair(
            "changing-z/overshoot",
            lambda: appell_expand(AppellSpec(one, QPower(1, 1), 8), order, overshoot=10),
            lambda: appell_expand(AppellSpec(one, QPower(1, 1), 8), order),
            order,
        )
    )
    return out


# -- V0 -----------------------------------------------------------------------


def v0_equivalence(order) -> list[Verdict]:
    return [
        _pair("v0-equivalence/eulerian1=eulerian2", lambda: v0_eulerian1(order), lambda: v0_eulerian2(order), order),
        _pair("v0-equivalence/eulerian1=appell", lambda: v0_eulerian1(order), lambda: v0_appell(order), order),
        _pair("v0-equivalence/eulerian2=appell", lambda: v0_eulerian2(order), lambda: v0_appell(order), order),
    ]


def theorem1(order) -> list[Verdict]:
    order = as_fraction(order)
    v = v0_eulerian1(8 * order + 8)
    out = [_guard(f"theorem1/r={r}", order, lambda: theorem1_check(r, order, v)) for r in range(8)]
    out += [_guard(f"q8-form/r={r}", 8 * order, lambda: q8_form_check(r, 8 * order)) for r in range(8)]
    return out


def _ps(p) -> Sequence[int]:
    if p is None:
        return (3, 5)
    if isinstance(p, int):
        return (check_p(p),)
    return tuple(check_p(x) for x in p)


def theorem2(order, p=None) -> list[Verdict]:
    out = []
    v = v0_eulerian1(order)
    for pp in _ps(p):
        out.append(_pair(f"theorem2/p={pp}", lambda: v, lambda: theorem2_rhs(pp, order), order))
        for c in (1, 3):
            z = QPower(1, c)
            out.append(
                _pair(
                    f"level-p/p={pp},z=q^{c}",
                    lambda: _appell(QPower(1, 0), z, 8, order),
                    lambda: level_p_decomposition(z, pp, order),
                    order,
                )
            )
    return out


def _off_residues(s: QSeries, residues, modulus: int) -> QSeries:
    """Part of ``s`` supported outside the given residue classes."""
    for a in residues:
        s = s - s.dissect(a, modulus)
    return s


def theta_only(order, p=None) -> list[Verdict]:
    out = []
    v = v0_eulerian1(order)
    for pp in _ps(p):
        res = mock_residues(pp)
        mod = 8 * pp
        mock = lambda: evaluate(theorem2_mock_text(pp), order)
        out.append(
            _zero(f"theta-only/p={pp}/mock part outside {sorted(res)}", lambda: _off_residues(mock(), res, mod), order)
        )
        out.append(
            _pair(
                f"theta-only/p={pp}/V0 outside {sorted(res)} is theta",
                lambda: _off_residues(v, res, mod),
                lambda: _off_residues(evaluate(theorem2_theta_text(pp), order), res, mod),
                order,
            )
        )
    return out


# -- partitions ---------------------------------------------------------------


def _scan_verdict(t: int, d: int, count: int) -> Verdict:
    bad = congruence_scan(t, d, count)
    id = f"ramanujan/p({t}n+{d}) = 0 mod {t}"
    if not bad:
        return Verdict(id, "pass", count)
    n = bad[0]
    return Verdict(id, "fail", count, Discrepancy(Fraction(n), Fraction(partition_count(t * n + d) % t), Fraction(0)))


def ramanujan(order=None) -> list[Verdict]:
    out = [
        _guard(
            "ramanujan/p(5n+4)",
            10,
            lambda: compare("dissect(1/J(1),4,5,defl)", "5*J(5)^5/J(1)^6", 10, id="ramanujan/p(5n+4)"),
        ),
        _guard(
            "ramanujan/p(7n+5)",
            7,
            lambda: compare(
                "dissect(1/J(1),5,7,defl)", "7*J(7)^3/J(1)^4+49*q*J(7)^7/J(1)^8", 7, id="ramanujan/p(7n+5)"
            ),
        ),
        _pair(
            "ramanujan/p(n) by recurrence = 1/J(1)",
            lambda: QSeries(1, 0, 51, [partition_count(n) for n in range(51)]),
            lambda: evaluate("1/J(1)", 51),
            51,
        ),
    ]
    out += [_scan_verdict(5, 4, 10), _scan_verdict(7, 5, 8), _scan_verdict(11, 6, 5)]
    return out


def dyson_asd(order) -> list[Verdict]:
    order = as_fraction(order)
    n = int(order)
    zero = lambda k: QSeries.zero(k)
    out = []
    # N(0,5;5m+4) = N(1,5;5m+4) = N(2,5;5m+4) for 5m+4 <= 44
    for b in (1, 2):
        out.append(_pair(f"dyson/R(0,{b},5,4,5)=0", lambda: rank_difference_series(0, b, 5, 4, 5, 9), lambda: zero(9), 9))
    # M = 7 analogue for 7m+5 <= 40
    for b in (1, 2, 3):
        out.append(_pair(f"dyson/R(0,{b},7,5,7)=0", lambda: rank_difference_series(0, b, 7, 5, 7, 6), lambda: zero(6), 6))
    out.append(_pair("asd/R(0,1,5,4,5)=0", lambda: rank_difference_series(0, 1, 5, 4, 5, n), lambda: zero(n), n))
    out.append(
        _pair(
            "asd/R(0,2,5,1,5)",
            lambda: rank_difference_series(0, 2, 5, 1, 5, n),
            lambda: evaluate("J(5)^2/J(1,5)", n),
            n,
        )
    )
    out.append(
        _pair(
            "asd/R(1,2,5,2,5)",
            lambda: rank_difference_series(1, 2, 5, 2, 5, n),
            lambda: evaluate("J(5)^2/J(2,5)", n),
            n,
        )
    )
    return out


SUITES: dict[str, Callable[..., list[Verdict]]] = {
    "prelim-products": prelim_products,
    "triple-product": triple_product_grid,
    "shift-flip": shift_flip,
    "jsplit": jsplit,
    "weierstrass": weierstrass,
    "h1": h1,
    "lemmaA": lemma_a,
    "lemmaB": lemma_b,
    "changing-z": changing_z,
    "v0-equivalence": v0_equivalence,
    "theorem1": theorem1,
    "theorem2": theorem2,
    "theta-only": theta_only,
    "ramanujan": ramanujan,
    "dyson-asd": dyson_asd,
}

DEFAULT_ORDERS = {
    "prelim-products": 200,
    "triple-product": 100,
    "shift-flip": 100,
    "jsplit": 150,
    "weierstrass": 100,
    "h1": 100,
    "lemmaA": 300,
    "lemmaB": 300,
    "changing-z": 150,
    "v0-equivalence": 200,
    "theorem1": 50,
    "theorem2": 400,
    "theta-only": 400,
    "ramanujan": None,
    "dyson-asd": 7,
}

_TAKES_P = {"theorem2", "theta-only"}


def suite_names() -> list[str]:
    return list(SUITES)


def run_suite(name: str, order=None, p=None) -> list[Verdict]:
    """Run a named battery; ``order`` defaults to the suite's own order."""
    if name not in SUITES:
        raise UnknownSuite(f"unknown suite {name!r}; known suites: {', '.join(SUITES)}")
    if order is None:
        order = DEFAULT_ORDERS[name]
    if p is not None and name not in _TAKES_P:
        raise ValueError(f"suite {name!r} does not take p")
    fn = SUITES[name]
    if name in _TAKES_P:
        return fn(order, p)
    if order is None:
        return fn()
    return fn(as_fraction(order))

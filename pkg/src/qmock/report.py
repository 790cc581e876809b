"""Verdicts and the JSON wire formats for series and verdicts."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .series import EqualityReport, QSeries

__all__ = [
    "Discrepancy",
    "Verdict",
    "format_rational",
    "parse_rational",
    "series_to_json",
    "series_from_json",
    "verdict_from_report",
    "dumps",
]


def format_rational(x: Fraction) -> str:
    """Exact ``"numerator/denominator"`` string in lowest terms (denominator always shown)."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text)


def series_to_json(s: QSeries) -> dict:
    return {
        "denom": s.denom,
        "val": s.val,
        "prec": s.prec,
        "coeffs": [format_rational(c) for c in s.coeffs],
    }


def series_from_json(data: dict) -> QSeries:
    return QSeries(
        int(data["denom"]),
        int(data["val"]),
        int(data["prec"]),
        [parse_rational(c) for c in data["coeffs"]],
    )


@dataclass(frozen=True)
class Discrepancy:
    exponent: Fraction
    lhs: Fraction
    rhs: Fraction

    def to_dict(self) -> dict:
        return {
            "exponent": format_rational(self.exponent),
            "lhs": format_rational(self.lhs),
            "rhs": format_rational(self.rhs),
        }


def _order_json(order):
    if order is None:
        return None
    order = Fraction(order)
    return order.numerator if order.denominator == 1 else format_rational(order)


@dataclass(frozen=True)
class Verdict:
    """One pass/fail/error line of a verification run."""

    id: str
    status: str
    order: Optional[Fraction]
    discrepancy: Optional[Discrepancy] = None
    message: Optional[str] = None

    def __post_init__(self):
        if self.status not in ("pass", "fail", "error"):
            raise ValueError(f"bad status {self.status!r}")
        if self.status == "fail" and self.discrepancy is None:
            raise ValueError("a failing verdict needs a discrepancy")
        if self.status == "pass" and self.discrepancy is not None:
            raise ValueError("a passing verdict cannot carry a discrepancy")

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        out = {
            "id": self.id,
            "status": self.status,
            "order": _order_json(self.order),
            "discrepancy": None if self.discrepancy is None else self.discrepancy.to_dict(),
        }
        if self.message is not None:
            out["message"] = self.message
        return out

    def to_text(self) -> str:
        order = "" if self.order is None else f" (order {self.order})"
        line = f"{self.status.upper():5} {self.id}{order}"
        if self.discrepancy is not None:
            d = self.discrepancy
            line += f": first mismatch at q^{d.exponent}: {d.lhs} vs {d.rhs}"
        if self.message:
            line += f": {self.message}"
        return line


def verdict_from_report(id: str, report: EqualityReport) -> Verdict:
    if report.equal:
        return Verdict(id, "pass", report.order)
    return Verdict(id, "fail", report.order, Discrepancy(report.exponent, report.lhs, report.rhs))


def dumps(obj) -> str:
    """Deterministic JSON encoding used for every machine-readable output."""
    return json.dumps(obj, sort_keys=True, separators=(",", ": "), indent=2)

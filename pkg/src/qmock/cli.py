"""Command-line front end: ``qmock eval | compare | coeff | suite``.

Exit codes: 0 everything passed, 1 some check failed, 2 usage or parse
error, 3 evaluation error.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import dsl
from .errors import DSLSyntaxError, EvaluationError, InvalidP, QMockError, UnknownSuite
from .report import dumps, format_rational, series_to_json
from .suites import run_suite, suite_names

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_EVAL = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def default_order() -> Fraction:
    raw = os.environ.get("QMOCK_DEFAULT_ORDER")
    if raw is None:
        return Fraction(dsl.DEFAULT_ORDER)
    try:
        return Fraction(raw)
    except (ValueError, ZeroDivisionError):
        raise SystemExit(f"qmock: QMOCK_DEFAULT_ORDER is not a rational number: {raw!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qmock", description="Exact q-series evaluation and identity verification.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    fmt = dict(choices=("text", "json"), default="text", help="output format (default: text)")

    p = sub.add_parser("eval", help="expand an expression")
    p.add_argument("--order", type=_rational, help="truncation exponent")
    p.add_argument("--format", **fmt)
    p.add_argument("expr")

    p = sub.add_parser("compare", help="compare two expressions coefficientwise")
    p.add_argument("--order", type=_rational, help="truncation exponent")
    p.add_argument("--format", **fmt)
    p.add_argument("lhs")
    p.add_argument("rhs")

    p = sub.add_parser("coeff", help="one exact coefficient")
    p.add_argument("--format", **fmt)
    p.add_argument("expr")
    p.add_argument("exponent", type=_rational)

    p = sub.add_parser("suite", help="run a named verification suite")
    p.add_argument("name", help="one of: " + ", ".join(suite_names()))
    p.add_argument("--order", type=_rational)
    p.add_argument("--p", type=int, dest="p")
    p.add_argument("--format", **fmt)
    return parser


def _parse_failure(exc: DSLSyntaxError, text: str) -> int:
    print(f"qmock: syntax error: {exc}", file=sys.stderr)
    print("  " + text, file=sys.stderr)
    print("  " + " " * len(text.encode()[: exc.offset].decode(errors="ignore")) + "^", file=sys.stderr)
    return EXIT_USAGE


def _eval(args) -> int:
    order = args.order if args.order is not None else default_order()
    try:
        expr = dsl.parse(args.expr)
    except DSLSyntaxError as exc:
        return _parse_failure(exc, args.expr)
    s = dsl.evaluate(expr, order)
    print(dumps(series_to_json(s)) if args.format == "json" else s.__str__())
    return EXIT_PASS


def _compare(args) -> int:
    order = args.order if args.order is not None else default_order()
    sides = []
    for text in (args.lhs, args.rhs):
        try:
            sides.append(dsl.parse(text))
        except DSLSyntaxError as exc:
            return _parse_failure(exc, text)
    verdict = dsl.compare(sides[0], sides[1], order)
    print(dumps(verdict.to_dict()) if args.format == "json" else verdict.to_text())
    return {"pass": EXIT_PASS, "fail": EXIT_FAIL}.get(verdict.status, EXIT_EVAL)


def _coeff(args) -> int:
    try:
        expr = dsl.parse(args.expr)
    except DSLSyntaxError as exc:
        return _parse_failure(exc, args.expr)
    # smallest precision strictly above the requested exponent on its own grid
    prec = args.exponent + Fraction(1, args.exponent.denominator)
    c = dsl.evaluate(expr, prec).coefficient(args.exponent)
    if args.format == "json":
        print(dumps({"exponent": format_rational(args.exponent), "coefficient": format_rational(c)}))
    else:
        print(c)
    return EXIT_PASS


def _suite(args) -> int:
    try:
        verdicts = run_suite(args.name, order=args.order, p=args.p)
    except (UnknownSuite, InvalidP, ValueError) as exc:
        print(f"qmock: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.format == "json":
        print(dumps([v.to_dict() for v in verdicts]))
    else:
        for v in verdicts:
            print(v.to_text())
        passed = sum(v.passed for v in verdicts)
        print(f"{passed}/{len(verdicts)} passed")
    statuses = {v.status for v in verdicts}
    if "error" in statuses:
        return EXIT_EVAL
    return EXIT_FAIL if "fail" in statuses else EXIT_PASS


_COMMANDS = {"eval": _eval, "compare": _compare, "coeff": _coeff, "suite": _suite}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except EvaluationError as exc:
        span = f" at offset {exc.span[0]}" if getattr(exc, "span", None) else ""
        print(f"qmock: evaluation error{span}: {exc}", file=sys.stderr)
        return EXIT_EVAL
    except QMockError as exc:
        print(f"qmock: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_EVAL


if __name__ == "__main__":
    sys.exit(main())

"""A small expression language for q-series identities.

Grammar (whitespace is insignificant)::

    expr    := term (('+' | '-') term)*
    term    := factor (('*' | '/') factor)*
    factor  := '-' factor | atom ('^' int)?
    atom    := rational | 'q' ('^' rational)?
             | 'J(' rational [',' rational] ')' | 'JB(' rational ',' rational ')'
             | 'j(' qpow ';' rational ')' | 'AP(' qpow ',' qpow ',' rational ')'
             | 'poch(' qpow ',' rational ',' (int | 'inf') ')'
             | 'dissect(' expr ',' int ',' int [',' 'defl'] ')'
             | 'inflate(' expr ',' rational ')' | '(' expr ')'
    qpow    := ['-'] ('q' ('^' rational)? | '1')

A literal ``p/q`` is read greedily as one rational, so ``q^1/2`` is
``q^(1/2)`` and ``1/2*x`` multiplies by one half.  ``J(m)`` is the Euler
product ``(q^m; q^m)_inf``, ``J(a, m)`` is ``j(q^a; q^m)`` and ``JB(a, m)`` is
``j(-q^a; q^m)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .appell import AppellSpec
from .errors import (
    DSLSyntaxError,
    EvaluationError,
    InsufficientPrecision,
    QMockError,
    ZeroLeadingCoefficient,
)
from .report import Verdict, verdict_from_report
from .series import QPower, QSeries, RationalLike, _ceil, as_fraction, equal_to_order, monomial
from .theta import PochSpec, ThetaSpec, J, Jbar

__all__ = [
    "Expr",
    "Rational",
    "QPow",
    "Add",
    "Sub",
    "Mul",
    "Div",
    "Pow",
    "Neg",
    "Theta",
    "JTheta",
    "JEuler",
    "JBar",
    "Appell",
    "Poch",
    "Dissect",
    "Inflate",
    "parse",
    "unparse",
    "evaluate",
    "compare",
    "DEFAULT_ORDER",
]

DEFAULT_ORDER = 100


# -- syntax tree --------------------------------------------------------------


@dataclass(frozen=True)
class Expr:
    span: Optional[tuple[int, int]] = field(default=None, compare=False, repr=False, kw_only=True)


@dataclass(frozen=True)
class Rational(Expr):
    value: Fraction


@dataclass(frozen=True)
class QPow(Expr):
    exp: Fraction


@dataclass(frozen=True)
class Add(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Sub(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Mul(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Div(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Pow(Expr):
    base: Expr
    exponent: int


@dataclass(frozen=True)
class Neg(Expr):
    operand: Expr


@dataclass(frozen=True)
class Theta(Expr):
    z: QPower
    modulus: Fraction


@dataclass(frozen=True)
class JTheta(Expr):
    a: Fraction
    modulus: Fraction


@dataclass(frozen=True)
class JEuler(Expr):
    modulus: Fraction


@dataclass(frozen=True)
class JBar(Expr):
    a: Fraction
    modulus: Fraction


@dataclass(frozen=True)
class Appell(Expr):
    x: QPower
    z: QPower
    modulus: Fraction


@dataclass(frozen=True)
class Poch(Expr):
    x: QPower
    step: Fraction
    length: Optional[int]


@dataclass(frozen=True)
class Dissect(Expr):
    operand: Expr
    r: int
    m: int
    deflate: bool = False


@dataclass(frozen=True)
class Inflate(Expr):
    operand: Expr
    k: Fraction


_BINARY = (Add, Sub, Mul, Div)
_ATOMS = (Rational, QPow, Theta, JTheta, JEuler, JBar, Appell, Poch, Dissect, Inflate)


# -- lexer --------------------------------------------------------------------


@dataclass(frozen=True)
class Token:
    kind: str  # "num", "name", a punctuation character, or "eof"
    text: str
    offset: int


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]+)|([-+*/^(),;]))")


def _tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    data = text.encode("utf-8")
    try:
        text.encode("ascii")
    except UnicodeEncodeError:
        bad = next(i for i, ch in enumerate(text) if ord(ch) > 127)
        raise DSLSyntaxError(f"non-ASCII character {text[bad]!r}", len(text[:bad].encode()))
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            tokens.append(Token("eof", "", len(data)))
            return tokens
        m = _TOKEN.match(text, pos)
        if not m:
            raise DSLSyntaxError(f"unexpected character {text[pos]!r}", pos)
        if m.group(1):
            tokens.append(Token("num", m.group(1), m.start(1)))
        elif m.group(2):
            tokens.append(Token("name", m.group(2), m.start(2)))
        else:
            tokens.append(Token(m.group(3), m.group(3), m.start(3)))
        pos = m.end()


# -- parser -------------------------------------------------------------------

_FUNCTIONS = {"J", "JB", "j", "AP", "poch", "dissect", "inflate"}
_ATOM_START = {"integer", "q", "(", "-"} | {f + "(" for f in _FUNCTIONS}


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def error(self, expected, what=None):
        t = self.tok
        found = "end of input" if t.kind == "eof" else repr(t.text)
        raise DSLSyntaxError(what or f"unexpected {found}", t.offset, expected)

    def expect(self, kind: str, text: Optional[str] = None) -> Token:
        t = self.tok
        if t.kind != kind or (text is not None and t.text != text):
            self.error({text or kind})
        return self.advance()

    def accept(self, kind: str, text: Optional[str] = None) -> Optional[Token]:
        t = self.tok
        if t.kind == kind and (text is None or t.text == text):
            return self.advance()
        return None

    def span(self, start: int) -> tuple[int, int]:
        prev = self.tokens[self.i - 1]
        return (start, prev.offset + len(prev.text))

    # grammar rules

    def parse(self) -> Expr:
        e = self.expr()
        if self.tok.kind != "eof":
            self.error({"+", "-", "*", "/", "^", "end of input"})
        return e

    def expr(self) -> Expr:
        start = self.tok.offset
        left = self.term()
        while self.tok.kind in ("+", "-"):
            op = self.advance().kind
            right = self.term()
            cls = Add if op == "+" else Sub
            left = cls(left, right, span=self.span(start))
        return left

    def term(self) -> Expr:
        start = self.tok.offset
        left = self.factor()
        while self.tok.kind in ("*", "/"):
            op = self.advance().kind
            right = self.factor()
            cls = Mul if op == "*" else Div
            left = cls(left, right, span=self.span(start))
        return left

    def factor(self) -> Expr:
        start = self.tok.offset
        if self.accept("-"):
            return Neg(self.factor(), span=self.span(start))
        base = self.atom()
        if self.accept("^"):
            n = self.signed_integer()
            return Pow(base, n, span=self.span(start))
        return base

    def integer(self) -> int:
        return int(self.expect("num").text)

    def signed_integer(self) -> int:
        if self.tok.kind not in ("num", "-"):
            self.error({"integer"})
        neg = bool(self.accept("-"))
        n = self.integer()
        return -n if neg else n

    def unsigned_rational(self) -> Fraction:
        num = self.integer()
        if self.tok.kind == "/" and self.tokens[self.i + 1].kind == "num":
            self.advance()
            den = self.integer()
            if den == 0:
                self.i -= 1
                self.error({"nonzero denominator"}, "zero denominator")
            return Fraction(num, den)
        return Fraction(num)

    def rational(self) -> Fraction:
        if self.tok.kind not in ("num", "-"):
            self.error({"rational"})
        neg = bool(self.accept("-"))
        r = self.unsigned_rational()
        return -r if neg else r

    def qpow(self) -> QPower:
        sign = -1 if self.accept("-") else 1
        t = self.tok
        if t.kind == "name" and t.text == "q":
            self.advance()
            exp = self.rational() if self.accept("^") else Fraction(1)
            return QPower(sign, exp)
        if t.kind == "num":
            value = self.unsigned_rational()
            if value != 1:
                raise DSLSyntaxError("a signed q-power literal must be q^e, -q^e, 1 or -1", t.offset, {"q", "1"})
            return QPower(sign, 0)
        self.error({"q", "1", "-"})

    def atom(self) -> Expr:
        t = self.tok
        start = t.offset
        if t.kind == "num":
            return Rational(self.unsigned_rational(), span=self.span(start))
        if t.kind == "(":
            self.advance()
            e = self.expr()
            self.expect(")")
            return e
        if t.kind != "name":
            self.error(_ATOM_START)
        name = t.text
        if name == "q":
            self.advance()
            exp = self.rational() if self.accept("^") else Fraction(1)
            return QPow(exp, span=self.span(start))
        if name not in _FUNCTIONS:
            self.error(_ATOM_START, f"unknown name {name!r}")
        self.advance()
        self.expect("(")
        node = getattr(self, "_fn_" + name)(start)
        return node

    def _close(self, cls, start, *args):
        self.expect(")")
        return cls(*args, span=self.span(start))

    def _fn_J(self, start):
        first = self.rational()
        if self.accept(","):
            m = self._modulus()
            return self._close(JTheta, start, first, m)
        if first <= 0:
            raise DSLSyntaxError("J(m) needs a positive m", start, {"positive rational"})
        return self._close(JEuler, start, first)

    def _fn_JB(self, start):
        a = self.rational()
        self.expect(",")
        return self._close(JBar, start, a, self._modulus())

    def _fn_j(self, start):
        z = self.qpow()
        self.expect(";")
        return self._close(Theta, start, z, self._modulus())

    def _fn_AP(self, start):
        x = self.qpow()
        self.expect(",")
        z = self.qpow()
        self.expect(",")
        return self._close(Appell, start, x, z, self._modulus())

    def _fn_poch(self, start):
        x = self.qpow()
        self.expect(",")
        step = self._modulus()
        self.expect(",")
        if self.tok.kind == "name" and self.tok.text == "inf":
            self.advance()
            length = None
        else:
            length = self.integer()
        return self._close(Poch, start, x, step, length)

    def _fn_dissect(self, start):
        e = self.expr()
        self.expect(",")
        r = self.signed_integer()
        self.expect(",")
        off = self.tok.offset
        m = self.integer()
        if m < 1:
            raise DSLSyntaxError("dissection modulus must be positive", off, {"positive integer"})
        deflate = False
        if self.accept(","):
            self.expect("name", "defl")
            deflate = True
        return self._close(Dissect, start, e, r, m, deflate)

    def _fn_inflate(self, start):
        e = self.expr()
        self.expect(",")
        return self._close(Inflate, start, e, self._modulus())

    def _modulus(self) -> Fraction:
        off = self.tok.offset
        m = self.rational()
        if m <= 0:
            raise DSLSyntaxError("modulus must be positive", off, {"positive rational"})
        return m


def parse(text: str) -> Expr:
    """Parse identity-language source into an :class:`Expr` tree."""
    return _Parser(text).parse()


# -- printer ------------------------------------------------------------------


def _rat(x: Fraction) -> str:
    return str(x)


def _qpow(z: QPower) -> str:
    return ("-" if z.sign < 0 else "") + f"q^{z.exp}"


def _atom_text(e: Expr) -> str:
    if isinstance(e, Rational):
        return _rat(e.value)
    if isinstance(e, QPow):
        return f"q^{e.exp}"
    if isinstance(e, Theta):
        return f"j({_qpow(e.z)};{e.modulus})"
    if isinstance(e, JTheta):
        return f"J({e.a},{e.modulus})"
    if isinstance(e, JEuler):
        return f"J({e.modulus})"
    if isinstance(e, JBar):
        return f"JB({e.a},{e.modulus})"
    if isinstance(e, Appell):
        return f"AP({_qpow(e.x)},{_qpow(e.z)},{e.modulus})"
    if isinstance(e, Poch):
        n = "inf" if e.length is None else str(e.length)
        return f"poch({_qpow(e.x)},{e.step},{n})"
    if isinstance(e, Dissect):
        tail = ",defl" if e.deflate else ""
        return f"dissect({unparse(e.operand)},{e.r},{e.m}{tail})"
    if isinstance(e, Inflate):
        return f"inflate({unparse(e.operand)},{e.k})"
    raise TypeError(f"not an atom: {e!r}")


def _wrap(e: Expr) -> str:
    return "(" + unparse(e) + ")"


def unparse(e: Expr) -> str:
    """Print an expression so that :func:`parse` rebuilds the identical tree."""
    if isinstance(e, (Add, Sub)):
        op = "+" if isinstance(e, Add) else "-"
        left = _wrap(e.left) if isinstance(e.left, Neg) else unparse(e.left)
        right = _wrap(e.right) if isinstance(e.right, (Add, Sub, Neg)) else unparse(e.right)
        return f"{left}{op}{right}"
    if isinstance(e, (Mul, Div)):
        op = "*" if isinstance(e, Mul) else "/"
        left = _wrap(e.left) if isinstance(e.left, (Add, Sub, Neg)) else unparse(e.left)
        if isinstance(e.right, (Add, Sub, Neg, Mul, Div)):
            right = _wrap(e.right)
        elif isinstance(e, Div) and isinstance(e.right, Rational):
            right = _wrap(e.right)
        else:
            right = unparse(e.right)
        return f"{left}{op}{right}"
    if isinstance(e, Neg):
        inner = e.operand
        return "-" + (_wrap(inner) if isinstance(inner, _BINARY) else unparse(inner))
    if isinstance(e, Pow):
        base = _atom_text(e.base) if isinstance(e.base, _ATOMS) and not isinstance(e.base, QPow) else _wrap(e.base)
        return f"{base}^{e.exponent}"
    return _atom_text(e)


# -- evaluator ----------------------------------------------------------------


def _spec(e: Expr):
    if isinstance(e, Theta):
        return ThetaSpec(e.z, e.modulus)
    if isinstance(e, JTheta):
        return J(e.a, e.modulus)
    if isinstance(e, JBar):
        return Jbar(e.a, e.modulus)
    if isinstance(e, JEuler):
        return J(e.modulus)
    if isinstance(e, Poch):
        return PochSpec(e.x, e.step, e.length)
    if isinstance(e, Appell):
        return AppellSpec(e.x, e.z, e.modulus)
    return None


class Evaluator:
    """Bottom-up evaluation with the precision each subtree needs.

    Products only need lower bounds on the valuations of their factors;
    quotients and negative powers need the exact valuation of the divisor,
    which is found by expanding it until a nonzero term appears.
    """

    SEARCH = (16, 64, 256, 1024)

    def __init__(self):
        self._cache: dict[tuple[Expr, Fraction], QSeries] = {}
        self._bounds: dict[Expr, Fraction] = {}
        self._exact: dict[Expr, Fraction] = {}

    def _fail(self, e: Expr, exc: QMockError):
        if isinstance(exc, EvaluationError):
            raise exc
        raise EvaluationError(exc, e.span, unparse(e)) from exc

    def lower_bound(self, e: Expr) -> Fraction:
        if e not in self._bounds:
            try:
                self._bounds[e] = self._lower_bound(e)
            except QMockError as exc:
                self._fail(e, exc)
        return self._bounds[e]

    def _lower_bound(self, e: Expr) -> Fraction:
        if isinstance(e, Rational):
            return Fraction(0)
        if isinstance(e, QPow):
            return e.exp
        if isinstance(e, Appell):
            return _spec(e).valuation_bound()
        spec = _spec(e)
        if spec is not None:
            v = spec.valuation()
            if v is None:
                return spec.exponent(spec._start()) if isinstance(spec, ThetaSpec) else Fraction(0)
            return v
        if isinstance(e, (Add, Sub)):
            return min(self.lower_bound(e.left), self.lower_bound(e.right))
        if isinstance(e, Neg):
            return self.lower_bound(e.operand)
        if isinstance(e, Mul):
            return self.lower_bound(e.left) + self.lower_bound(e.right)
        if isinstance(e, Div):
            return self.lower_bound(e.left) - self.valuation(e.right)
        if isinstance(e, Pow):
            if e.exponent >= 0:
                return e.exponent * self.lower_bound(e.base)
            return e.exponent * self.valuation(e.base)
        if isinstance(e, Dissect):
            lb = self.lower_bound(e.operand)
            return Fraction(_ceil((lb - e.r) / e.m)) if e.deflate else lb
        if isinstance(e, Inflate):
            return e.k * self.lower_bound(e.operand)
        raise TypeError(f"cannot evaluate {e!r}")

    def valuation(self, e: Expr) -> Fraction:
        """Exact valuation; raises ZeroLeadingCoefficient if none can be found."""
        if e not in self._exact:
            try:
                self._exact[e] = self._valuation(e)
            except QMockError as exc:
                self._fail(e, exc)
        return self._exact[e]

    def _valuation(self, e: Expr) -> Fraction:
        if isinstance(e, Rational) and e.value:
            return Fraction(0)
        if isinstance(e, QPow):
            return e.exp
        if isinstance(e, (Theta, JTheta, JBar, JEuler, Poch)):
            v = _spec(e).valuation()
            if v is not None:
                return v
        elif isinstance(e, Mul):
            return self.valuation(e.left) + self.valuation(e.right)
        elif isinstance(e, Div):
            return self.valuation(e.left) - self.valuation(e.right)
        elif isinstance(e, Pow):
            return e.exponent * self.valuation(e.base)
        elif isinstance(e, Neg):
            return self.valuation(e.operand)
        elif isinstance(e, Inflate):
            return e.k * self.valuation(e.operand)
        elif not isinstance(e, Rational):
            lb = self.lower_bound(e)
            for extra in self.SEARCH:
                s = self.series(e, lb + extra)
                if not s.is_zero():
                    return s.valuation
        raise ZeroLeadingCoefficient(f"{unparse(e)} has no nonzero leading coefficient")

    def series(self, e: Expr, prec: Fraction) -> QSeries:
        key = (e, prec)
        if key not in self._cache:
            try:
                self._cache[key] = self._series(e, prec)
            except QMockError as exc:
                self._fail(e, exc)
        return self._cache[key]

    def _series(self, e: Expr, n: Fraction) -> QSeries:
        if isinstance(e, Rational):
            return monomial(e.value, 0, n)
        if isinstance(e, QPow):
            return monomial(1, e.exp, n)
        spec = _spec(e)
        if spec is not None:
            if isinstance(spec, ThetaSpec) and spec.is_zero():
                return QSeries.zero(n)
            return spec.expand(n)
        if isinstance(e, Add):
            return self.series(e.left, n) + self.series(e.right, n)
        if isinstance(e, Sub):
            return self.series(e.left, n) - self.series(e.right, n)
        if isinstance(e, Neg):
            return -self.series(e.operand, n)
        if isinstance(e, Mul):
            a = self.series(e.left, n - self.lower_bound(e.right))
            b = self.series(e.right, n - self.lower_bound(e.left))
            return a * b
        if isinstance(e, Div):
            vb = self.valuation(e.right)
            a = self.series(e.left, n + vb)
            b = self.series(e.right, n - self.lower_bound(e.left) + 2 * vb)
            return a * b.invert()
        if isinstance(e, Pow):
            k = e.exponent
            if k == 0:
                return monomial(1, 0, n)
            if k > 0:
                return self.series(e.base, n - (k - 1) * self.lower_bound(e.base)) ** k
            va = self.valuation(e.base)
            return self.series(e.base, n + (1 - k) * va).invert() ** (-k)
        if isinstance(e, Dissect):
            if e.deflate:
                return self.series(e.operand, e.m * n + e.r).dissect(e.r, e.m, True)
            return self.series(e.operand, n).dissect(e.r, e.m, False)
        if isinstance(e, Inflate):
            return self.series(e.operand, n / e.k).inflate(e.k)
        raise TypeError(f"cannot evaluate {e!r}")

    def evaluate(self, e: Expr, prec: RationalLike) -> QSeries:
        prec = as_fraction(prec)
        target = prec
        for _ in range(6):
            s = self.series(e, target)
            if s.precision >= prec:
                return s.truncate(prec)
            target += max(prec - s.precision, Fraction(8))
        raise EvaluationError(
            InsufficientPrecision(f"could not reach precision {prec}"), e.span, unparse(e)
        )


def evaluate(e: Union[Expr, str], prec: RationalLike = DEFAULT_ORDER) -> QSeries:
    """Evaluate an expression (or its source text) to a series known below ``q^prec``."""
    if isinstance(e, str):
        e = parse(e)
    return Evaluator().evaluate(e, prec)


Side = Union[Expr, str, QSeries]


def compare(lhs: Side, rhs: Side, prec: RationalLike = DEFAULT_ORDER, id: str = "compare") -> Verdict:
    """Evaluate both sides and compare every coefficient below ``q^prec``.

    A side may also be an already computed series.
    """
    prec = as_fraction(prec)
    ev = Evaluator()

    def side(x):
        if isinstance(x, QSeries):
            return x
        return ev.evaluate(parse(x) if isinstance(x, str) else x, prec)

    try:
        report = equal_to_order(side(lhs), side(rhs), prec)
    except QMockError as exc:
        return Verdict(id, "error", prec, message=str(exc))
    return verdict_from_report(id, report)

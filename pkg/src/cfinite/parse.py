"""Text grammar for rational functions and recurrences, plus the matching renderers.

Rational functions use ``+ - * / ^ ( )``, the variable ``x`` and rational
literals::

    (1+2*x-x^2)/((1-x)^4*(1+x)^2)

Recurrences are a relation followed by initial values, separated by ``;``::

    a(n+2) = 4*a(n+1) + a(n) + 2; a(0)=0; a(1)=1

The optional inhomogeneous tail is a sum of ``q * n^m * c^n`` terms, or
``gf(<rational function>)`` for an arbitrary rational generating function.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ArityError, DivisionByZeroPoly, IndexRangeError, ParseError
from .poly import Poly, RatFunc, render_poly, render_ratfunc
from .recurrence import Recurrence
from .transforms import monomial_gf

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]+)|(.))")


@dataclass
class _Tok:
    kind: str  # "num", "name", "op", "end"
    text: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.group(0).strip() == "":
            break
        start = m.start(m.lastindex)
        if m.group(1):
            out.append(_Tok("num", m.group(1), start))
        elif m.group(2):
            out.append(_Tok("name", m.group(2), start))
        else:
            out.append(_Tok("op", m.group(3), start))
        pos = m.end()
    out.append(_Tok("end", "", len(text)))
    return out


class _Cursor:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> _Tok:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def at(self, text: str) -> bool:
        return self.tok.kind in ("op", "name") and self.tok.text == text

    def take(self) -> _Tok:
        t = self.tok
        self.i += 1
        return t

    def expect(self, text: str) -> _Tok:
        if not self.at(text):
            found = self.tok.text or "end of input"
            raise ParseError(f"expected {text!r}, found {found!r}", self.tok.pos)
        return self.take()

    def expect_int(self) -> int:
        if self.tok.kind != "num":
            raise ParseError("expected an integer", self.tok.pos)
        return int(self.take().text)

    def done(self) -> None:
        if self.tok.kind != "end":
            raise ParseError(f"unexpected {self.tok.text!r}", self.tok.pos)


# -- rational functions -----------------------------------------------------------


class _Frac:
    """Unreduced ``num/den`` pair; reduction and the power-series check happen once at the end."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly = Poly([1])):
        if not den:
            raise DivisionByZeroPoly("division by zero in expression")
        self.num, self.den = num, den

    def __add__(self, o):
        return _Frac(self.num * o.den + o.num * self.den, self.den * o.den)

    def __sub__(self, o):
        return _Frac(self.num * o.den - o.num * self.den, self.den * o.den)

    def __mul__(self, o):
        return _Frac(self.num * o.num, self.den * o.den)

    def __truediv__(self, o):
        if not o.num:
            raise DivisionByZeroPoly("division by zero in expression")
        return _Frac(self.num * o.den, self.den * o.num)

    def __neg__(self):
        return _Frac(-self.num, self.den)

    def power(self, e: int):
        if e >= 0:
            return _Frac(self.num**e, self.den**e)
        if not self.num:
            raise DivisionByZeroPoly("negative power of zero")
        return _Frac(self.den ** (-e), self.num ** (-e))


def _expr(c: _Cursor) -> _Frac:
    value = _term(c)
    while c.at("+") or c.at("-"):
        op = c.take().text
        rhs = _term(c)
        value = value + rhs if op == "+" else value - rhs
    return value


def _term(c: _Cursor) -> _Frac:
    value = _unary(c)
    while c.at("*") or c.at("/"):
        op = c.take().text
        rhs = _unary(c)
        value = value * rhs if op == "*" else value / rhs
    return value


def _unary(c: _Cursor) -> _Frac:
    if c.at("-"):
        c.take()
        return -_unary(c)
    if c.at("+"):
        c.take()
        return _unary(c)
    base = _atom(c)
    if c.at("^"):
        c.take()
        sign = 1
        if c.at("-"):
            c.take()
            sign = -1
        base = base.power(sign * c.expect_int())
    return base


def _atom(c: _Cursor) -> _Frac:
    t = c.tok
    if t.kind == "num":
        c.take()
        return _Frac(Poly([int(t.text)]))
    if c.at("x"):
        c.take()
        return _Frac(Poly([0, 1]))
    if c.at("("):
        c.take()
        value = _expr(c)
        c.expect(")")
        return value
    found = t.text or "end of input"
    raise ParseError(f"unexpected {found!r} in expression", t.pos)


def parse_ratfunc(text: str) -> RatFunc:
    """Parse and normalise a rational function of ``x``."""
    c = _Cursor(text)
    value = _expr(c)
    c.done()
    return RatFunc(value.num, value.den)


def parse_rational(text: str) -> Fraction:
    """A constant expression such as ``-3/4`` or ``(1/2)``."""
    f = parse_ratfunc(text)
    if f.num.degree > 0 or f.den.degree > 0:
        raise ParseError(f"expected a rational constant, got {text!r}", 0)
    return f.num[0]


# -- recurrences ------------------------------------------------------------------------


@dataclass
class _Side:
    shifts: dict = field(default_factory=dict)  # j -> coefficient of a(n+j)
    forcing: list = field(default_factory=list)  # (q, m, c) meaning q n^m c^n
    gfs: list = field(default_factory=list)  # RatFunc inhomogeneities

    def scaled(self, s: Fraction) -> _Side:
        return _Side(
            {j: s * v for j, v in self.shifts.items()},
            [(s * q, m, b) for q, m, b in self.forcing],
            [g * s for g in self.gfs],
        )


def _rational_literal(c: _Cursor) -> Fraction:
    """``p`` or ``p/q`` (both unsigned integers)."""
    value = Fraction(c.expect_int())
    if c.at("/") and c.peek().kind == "num":
        c.take()
        d = c.expect_int()
        if d == 0:
            raise DivisionByZeroPoly("zero denominator in literal")
        value /= d
    return value


def _signed_rational(c: _Cursor) -> Fraction:
    sign = 1
    while c.at("-") or c.at("+"):
        if c.take().text == "-":
            sign = -sign
    return sign * _rational_literal(c)


def _shift_ref(c: _Cursor) -> int:
    c.expect("a")
    c.expect("(")
    c.expect("n")
    j = 0
    if c.at("+") or c.at("-"):
        pos = c.tok.pos
        sign = 1 if c.take().text == "+" else -1
        j = sign * c.expect_int()
        if j < 0:
            raise IndexRangeError("negative shift a(n-j); rewrite with a(n+j), j >= 0", pos)
    c.expect(")")
    return j


def _product(c: _Cursor, side: _Side, sign: int) -> None:
    coeff = Fraction(sign)
    shift = None
    npow = 0
    base = Fraction(1)
    gf = None
    start = c.tok.pos
    while True:
        t = c.tok
        if t.kind == "num":
            value = _rational_literal(c)
            if c.at("^"):
                c.take()
                c.expect("n")
                base *= value
            else:
                coeff *= value
        elif c.at("a"):
            if shift is not None:
                raise ParseError("product of two sequence terms is not linear", t.pos)
            shift = _shift_ref(c)
        elif c.at("n"):
            c.take()
            if c.at("^"):
                c.take()
                npow += c.expect_int()
            else:
                npow += 1
        elif c.at("gf"):
            c.take()
            c.expect("(")
            depth, begin = 1, c.tok.pos
            while depth:
                if c.tok.kind == "end":
                    raise ParseError("unterminated gf(", begin)
                if c.at("("):
                    depth += 1
                elif c.at(")"):
                    depth -= 1
                if depth:
                    c.take()
            end = c.tok.pos
            c.expect(")")
            gf = parse_ratfunc(c.text[begin:end])
        elif c.at("("):
            c.take()
            value = _signed_rational(c)
            c.expect(")")
            if c.at("^"):
                c.take()
                c.expect("n")
                base *= value
            else:
                coeff *= value
        else:
            found = t.text or "end of input"
            raise ParseError(f"unexpected {found!r} in recurrence", t.pos)
        if c.at("*"):
            c.take()
            continue
        if c.at("/") and c.peek().kind == "num":
            c.take()
            d = _rational_literal(c)
            if d == 0:
                raise DivisionByZeroPoly("division by zero in recurrence")
            coeff /= d
            if c.at("*"):
                c.take()
                continue
        break
    if shift is not None:
        if npow or base != 1 or gf is not None:
            raise ParseError("coefficients of a(n+j) must be constant", start)
        side.shifts[shift] = side.shifts.get(shift, Fraction(0)) + coeff
    elif gf is not None:
        if npow or base != 1:
            raise ParseError("gf(...) only takes a constant factor", start)
        side.gfs.append(gf * coeff)
    else:
        side.forcing.append((coeff, npow, base))


def _side(c: _Cursor) -> _Side:
    side = _Side()
    sign = 1
    if c.at("-"):
        c.take()
        sign = -1
    elif c.at("+"):
        c.take()
    _product(c, side, sign)
    while c.at("+") or c.at("-"):
        sign = 1 if c.take().text == "+" else -1
        _product(c, side, sign)
    return side


def _initial_value(text: str, offset: int) -> tuple[int, Fraction]:
    c = _Cursor(text)
    c.expect("a")
    c.expect("(")
    idx_pos = c.tok.pos
    j = c.expect_int()
    c.expect(")")
    c.expect("=")
    begin = c.tok.pos
    try:
        value = parse_rational(text[begin:])
    except ParseError as exc:
        pos = None if exc.position is None else exc.position + begin + offset
        raise ParseError(str(exc).split(" (at position")[0], pos) from None
    return j, value, idx_pos + offset


def parse_recurrence(text: str) -> Recurrence:
    """Parse ``a(n+k) = ... ; a(0)=v0; ...; a(k-1)=v_{k-1}``."""
    chunks = text.split(";")
    relation = chunks[0]
    c = _Cursor(relation)
    lhs = _side(c)
    c.expect("=")
    rhs = _side(c)
    c.done()
    if len(lhs.shifts) != 1 or lhs.forcing or lhs.gfs:
        raise ParseError("left-hand side must be a single term c*a(n+k)", 0)
    (k, lead), = lhs.shifts.items()
    if lead == 0:
        raise ParseError("leading coefficient is zero", 0)
    if k < 1:
        raise IndexRangeError("order must be at least 1: left side needs a(n+k) with k >= 1", 0)
    for j in rhs.shifts:
        if j > k:
            raise IndexRangeError(f"a(n+{j}) exceeds the order {k}", relation.find(f"n+{j}"))
    top = lead - rhs.shifts.get(k, Fraction(0))
    if top == 0:
        raise ParseError("a(n+k) cancels out of the relation", 0)
    rhs = rhs.scaled(1 / top)
    coeffs = [rhs.shifts.get(j, Fraction(0)) for j in range(k)]
    inhom = RatFunc(0)
    for q, m, b in rhs.forcing:
        inhom = inhom + monomial_gf(b, m) * q
    for g in rhs.gfs:
        inhom = inhom + g

    offset = len(relation) + 1
    values: dict[int, Fraction] = {}
    assignments = []
    for chunk in chunks[1:]:
        if chunk.strip():
            assignments.append((chunk, offset))
        offset += len(chunk) + 1
    if len(assignments) != k:
        raise ArityError(f"order {k} needs {k} initial values, got {len(assignments)}", None)
    for chunk, pos in assignments:
        j, v, at = _initial_value(chunk, pos)
        if not 0 <= j < k:
            raise IndexRangeError(f"initial value a({j}) outside 0..{k - 1}", at)
        if j in values:
            raise ParseError(f"a({j}) assigned twice", at)
        values[j] = v
    return Recurrence(coeffs, [values[j] for j in range(k)], None if inhom.is_zero() else inhom)


# -- rendering --------------------------------------------------------------------------


def _fmt_ref(j: int) -> str:
    return "a(n)" if j == 0 else f"a(n+{j})"


def _fmt_base(c: Fraction) -> str:
    return str(c) if c > 0 and c.denominator == 1 else f"({c})"


def _forcing_terms(f: RatFunc) -> list[tuple[Fraction, int, Fraction]] | None:
    """Express ``f`` as a sum of ``q n^m c^n`` with rational ``c``, if possible."""
    from .closedform import closed_form

    if not f.is_proper():
        return None
    try:
        cf = closed_form(f)
    except Exception:
        return None
    out = []
    for t in cf.terms:
        if not (t.is_exact and t.base.is_rational and t.coeff.is_rational):
            return None
        if t.coeff:
            out.append((t.coeff.a, t.power, t.base.a))
    return out


def _signed(parts: list[tuple[Fraction, str]]) -> str:
    text = ""
    for q, body in parts:
        mag = abs(q)
        if body:
            piece = body if mag == 1 else f"{mag}*{body}"
        else:
            piece = str(mag)
        if not text:
            text = ("-" if q < 0 else "") + piece
        else:
            text += (" - " if q < 0 else " + ") + piece
    return text or "0"


def render_recurrence(r: Recurrence) -> str:
    k = r.order
    parts = [(r.coeffs[j], _fmt_ref(j)) for j in range(k - 1, -1, -1) if r.coeffs[j]]
    if r.inhomogeneity is not None:
        forcing = _forcing_terms(r.inhomogeneity)
        if forcing is None:
            parts.append((Fraction(1), f"gf({render_ratfunc(r.inhomogeneity)})"))
        else:
            for q, m, b in forcing:
                factors = []
                if m:
                    factors.append("n" if m == 1 else f"n^{m}")
                if b != 1:
                    factors.append(f"{_fmt_base(b)}^n")
                parts.append((q, "*".join(factors)))
    inits = "; ".join(f"a({j})={v}" for j, v in enumerate(r.initial))
    return f"{_fmt_ref(k)} = {_signed(parts)}; {inits}"


__all__ = [
    "parse_ratfunc",
    "parse_rational",
    "parse_recurrence",
    "render_poly",
    "render_ratfunc",
    "render_recurrence",
]

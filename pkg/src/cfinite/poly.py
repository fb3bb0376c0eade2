"""Dense univariate polynomials and rational functions over the rationals.

Coefficients are stored in ascending order of powers as :class:`fractions.Fraction`.
Both types are immutable; every operation returns a new value.

>>> lucas = RatFunc(Poly([2, -1]), Poly([1, -1, -1]))
>>> series_expand(lucas, 6)
[Fraction(2, 1), Fraction(1, 1), Fraction(3, 1), Fraction(4, 1), Fraction(7, 1), Fraction(11, 1)]
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable

from .errors import DivisionByZeroPoly, NotAPowerSeries

# Degree reported for the zero polynomial; below every natural number.
ZERO_DEGREE = -1


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


class Poly:
    """Polynomial ``c[0] + c[1] x + ... + c[d] x^d`` with rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [as_fraction(v) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def constant(cls, value) -> Poly:
        return cls([value])

    @classmethod
    def monomial(cls, power: int, coeff=1) -> Poly:
        return cls([0] * power + [coeff])

    @classmethod
    def x(cls) -> Poly:
        return cls([0, 1])

    # -- basic queries ---------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else ZERO_DEGREE

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly({[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        return render_poly(self)

    def __call__(self, x):
        """Horner evaluation; works for any ring element supporting ``*`` and ``+``."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # -- arithmetic ------------------------------------------------------

    @staticmethod
    def _lift(other) -> Poly | None:
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly([other])
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        return Poly(self[i] + o[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not self.coeffs or not o.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(o.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> Poly:
        if exponent < 0:
            raise ValueError("negative polynomial power")
        result, base = Poly([1]), self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __divmod__(self, other) -> tuple[Poly, Poly]:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return poly_divrem(self, o)

    def __floordiv__(self, other) -> Poly:
        return divmod(self, other)[0]

    def __mod__(self, other) -> Poly:
        return divmod(self, other)[1]

    def scale(self, c) -> Poly:
        c = as_fraction(c)
        return Poly(c * a for a in self.coeffs)

    # -- structural operations -------------------------------------------

    def derivative(self) -> Poly:
        return Poly(i * c for i, c in enumerate(self.coeffs) if i)

    def monic(self) -> Poly:
        if not self.coeffs:
            return self
        return self.scale(1 / self.lc)

    def truncate(self, n: int) -> Poly:
        """Drop every power ``>= n`` (reduction modulo ``x^n``)."""
        return Poly(self.coeffs[:n])

    def shift_down(self, n: int) -> Poly:
        """Quotient by ``x^n``, discarding the low-order remainder."""
        return Poly(self.coeffs[n:])

    def substitute_scaled(self, c) -> Poly:
        """``p(c x)``."""
        c = as_fraction(c)
        return Poly(a * c**i for i, a in enumerate(self.coeffs))

    def substitute_power(self, m: int) -> Poly:
        """``p(x^m)`` for ``m >= 1``."""
        if m < 1:
            raise ValueError("power substitution needs m >= 1")
        out = [Fraction(0)] * ((len(self.coeffs) - 1) * m + 1) if self.coeffs else []
        for i, a in enumerate(self.coeffs):
            out[i * m] = a
        return Poly(out)

    def reversed(self, degree: int | None = None) -> Poly:
        """``x^degree p(1/x)``; ``degree`` defaults to ``self.degree``."""
        d = self.degree if degree is None else degree
        if d < self.degree:
            raise ValueError("reversal degree below polynomial degree")
        padded = list(self.coeffs) + [Fraction(0)] * (d + 1 - len(self.coeffs))
        return Poly(reversed(padded))

    def content_primitive(self) -> tuple[Fraction, list[int]]:
        """Split into a rational content and a primitive integer coefficient list."""
        from math import gcd, lcm

        if not self.coeffs:
            return Fraction(0), []
        den = 1
        for c in self.coeffs:
            den = lcm(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if ints[-1] < 0:
            g = -g
        return Fraction(g, den), [v // g for v in ints]


def poly_mul(p: Poly, q: Poly) -> Poly:
    return p * q


def poly_divrem(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    """Euclidean division ``p = q*quot + rem`` with ``deg rem < deg q``."""
    if not q:
        raise DivisionByZeroPoly("division by the zero polynomial")
    rem = list(p.coeffs)
    dq = q.degree
    if len(rem) - 1 < dq:
        return Poly(), p
    quot = [Fraction(0)] * (len(rem) - dq)
    inv_lc = 1 / q.lc
    for i in range(len(rem) - 1 - dq, -1, -1):
        c = rem[i + dq] * inv_lc
        quot[i] = c
        if c:
            for j, b in enumerate(q.coeffs):
                rem[i + j] -= c * b
    return Poly(quot), Poly(rem[:dq])


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic greatest common divisor; ``gcd(0, 0) = 0``."""
    a, b = p, q
    while b:
        a, b = b, poly_divrem(a, b)[1].monic()
    return a.monic()


def poly_xgcd(p: Poly, q: Poly) -> tuple[Poly, Poly, Poly]:
    """Return ``(g, s, t)`` with ``s p + t q = g`` and ``g`` monic."""
    r0, r1 = p, q
    s0, s1 = Poly([1]), Poly()
    t0, t1 = Poly(), Poly([1])
    while r1:
        quot, rem = poly_divrem(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - quot * s1
        t0, t1 = t1, t0 - quot * t1
    if not r0:
        return r0, s0, t0
    inv = 1 / r0.lc
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


# -- text rendering -----------------------------------------------------------


def _render_coeff_term(c: Fraction, power: int, var: str) -> str:
    mag = abs(c)
    if power == 0:
        return str(mag)
    mono = var if power == 1 else f"{var}^{power}"
    if mag == 1:
        return mono
    return f"{mag}*{mono}"


def render_poly(p: Poly, var: str = "x") -> str:
    """Ascending-power text form, e.g. ``1 - x - x^2`` or ``3/2 + 1/2*x^3``."""
    parts = []
    for i, c in enumerate(p.coeffs):
        if c == 0:
            continue
        body = _render_coeff_term(c, i, var)
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts) if parts else "0"


# -- rational functions -------------------------------------------------------


class RatFunc:
    """Reduced rational function ``num/den`` normalised so that ``den(0) == 1``.

    Construction always normalises; a denominator divisible by ``x`` after
    reduction raises :class:`NotAPowerSeries`.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num = num if isinstance(num, Poly) else Poly([num])
        den = den if isinstance(den, Poly) else Poly([den])
        if not den:
            raise DivisionByZeroPoly("rational function with zero denominator")
        if not num:
            num, den = Poly(), Poly([1])
        else:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num // g, den // g
        c0 = den[0]
        if c0 == 0:
            raise NotAPowerSeries(f"denominator {den} vanishes at x = 0")
        if c0 != 1:
            num, den = num.scale(1 / c0), den.scale(1 / c0)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFunc is immutable")

    @classmethod
    def geometric(cls, c=1) -> RatFunc:
        """``1/(1 - c x)``, the generating function of ``c^n``."""
        return cls(Poly([1]), Poly([1, -as_fraction(c)]))

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, Poly)):
            other = RatFunc(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"RatFunc({render_poly(self.num)!r}, {render_poly(self.den)!r})"

    def __str__(self) -> str:
        return render_ratfunc(self)

    def is_zero(self) -> bool:
        return not self.num

    def is_proper(self) -> bool:
        return self.num.degree < self.den.degree

    @staticmethod
    def _lift(other) -> RatFunc | None:
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (int, Fraction, Poly)):
            return RatFunc(other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> RatFunc:
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise DivisionByZeroPoly("division by the zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o / self

    def series(self, n: int) -> list[Fraction]:
        return series_expand(self, n)


def ratfunc_normalize(num: Poly, den: Poly) -> RatFunc:
    return RatFunc(num, den)


def series_expand(f: RatFunc, n: int) -> list[Fraction]:
    """First ``n`` power-series coefficients of ``f``.

    Uses ``num_k = sum_i den_i a_{k-i}`` solved for ``a_k`` (``den_0 == 1``).
    """
    num, den = f.num.coeffs, f.den.coeffs
    out: list[Fraction] = []
    for k in range(n):
        acc = num[k] if k < len(num) else Fraction(0)
        for i in range(1, min(k, len(den) - 1) + 1):
            acc -= den[i] * out[k - i]
        out.append(acc)
    return out


def render_ratfunc(f: RatFunc, var: str = "x") -> str:
    if f.den == Poly([1]):
        return render_poly(f.num, var)
    return f"({render_poly(f.num, var)})/({render_poly(f.den, var)})"

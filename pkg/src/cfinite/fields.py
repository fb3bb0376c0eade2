"""Scalars for closed forms: exact quadratic numbers and error-bounded complex values."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import isqrt

from mpmath.ctx_mp import MPContext

from .poly import as_fraction

DEFAULT_PRECISION = 128


@lru_cache(maxsize=1024)
def squarefree_decompose(n: int) -> tuple[int, int]:
    """Write ``n = f^2 * d`` with ``d`` squarefree (sign kept on ``d``).

    Trial division; a cofactor left above the search bound is taken as
    squarefree unless it is a perfect square, which keeps the value correct
    even if the representation is then not canonical.
    """
    if n == 0:
        return 0, 0
    sign = -1 if n < 0 else 1
    m = abs(n)
    f, d = 1, 1
    p = 2
    while p * p <= m and p <= 1_000_000:
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        f *= p ** (e // 2)
        if e % 2:
            d *= p
        p += 1 if p == 2 else 2
    r = isqrt(m)
    if r * r == m:
        f *= r
    else:
        d *= m
    return f, sign * d


class FieldElem:
    """Element ``a + b*sqrt(d)`` of a quadratic field, or a plain rational when ``b == 0``.

    ``d`` is a squarefree integer other than 0 and 1; ``d = -1`` gives the
    Gaussian rationals. Elements of different quadratic fields cannot be
    combined, except through a rational operand.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a=0, b=0, d=None):
        a, b = as_fraction(a), as_fraction(b)
        if b != 0:
            if d is None or d in (0, 1):
                raise ValueError("quadratic element needs a squarefree d not in {0, 1}")
            f, dd = squarefree_decompose(int(d))
            if dd == 1:
                a, b, d = a + b * f, Fraction(0), None
            else:
                b, d = b * f, dd
        else:
            d = None
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElem is immutable")

    @classmethod
    def sqrt(cls, r) -> FieldElem:
        """Exact square root of a rational (negative allowed, principal branch)."""
        r = as_fraction(r)
        if r == 0:
            return cls(0)
        u, v = r.numerator, r.denominator
        f, d = squarefree_decompose(u * v)
        if d == 1:
            return cls(Fraction(f, v))
        return cls(0, Fraction(f, v), d)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    @property
    def is_real(self) -> bool:
        return self.b == 0 or self.d > 0

    @property
    def tag(self) -> str:
        return "rational" if self.b == 0 else "quadratic"

    def to_fraction(self) -> Fraction:
        if self.b != 0:
            raise ValueError(f"{self} is not rational")
        return self.a

    def _coerce(self, other) -> FieldElem | None:
        if isinstance(other, FieldElem):
            o = other
        elif isinstance(other, (int, Fraction)):
            o = FieldElem(other)
        else:
            return None
        if self.b != 0 and o.b != 0 and self.d != o.d:
            raise ValueError(f"cannot combine elements of Q(sqrt({self.d})) and Q(sqrt({o.d}))")
        return o

    def _field(self, o: FieldElem):
        return self.d if self.b != 0 else o.d

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElem(self.a + o.a, self.b + o.b, self._field(o))

    __radd__ = __add__

    def __neg__(self) -> FieldElem:
        return FieldElem(-self.a, -self.b, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self._field(o)
        dd = d if d is not None else 0
        return FieldElem(self.a * o.a + dd * self.b * o.b, self.a * o.b + self.b * o.a, d)

    __rmul__ = __mul__

    def conjugate(self) -> FieldElem:
        """Galois conjugate ``a - b*sqrt(d)`` (complex conjugate when ``d < 0``)."""
        return FieldElem(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - (self.d or 0) * self.b * self.b

    def inverse(self) -> FieldElem:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero field element")
        c = self.conjugate()
        return FieldElem(c.a / n, c.b / n, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int) -> FieldElem:
        if n < 0:
            return self.inverse() ** (-n)
        result, base = FieldElem(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if not isinstance(other, FieldElem):
            return NotImplemented
        return (self.a, self.b, self.d) == (other.a, other.b, other.d)

    def __hash__(self) -> int:
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __bool__(self) -> bool:
        return self.a != 0 or self.b != 0

    def abs_squared(self) -> FieldElem:
        """``|z|^2`` for complex elements, ``z^2`` for real ones; always real."""
        if self.b != 0 and self.d < 0:
            return FieldElem(self.norm())
        return self * self

    def abs(self) -> FieldElem:
        """Exact modulus, itself a real quadratic (or rational) number."""
        if self.b == 0:
            return FieldElem(abs(self.a))
        if self.d < 0:
            return FieldElem.sqrt(self.norm())
        return self if self.sign() >= 0 else -self

    def sign(self) -> int:
        """Sign of a real element, decided exactly."""
        if not self.is_real:
            raise ValueError("sign of a non-real element")
        if self.b == 0:
            return (self.a > 0) - (self.a < 0)
        # a + b sqrt(d) > 0 decided by comparing a^2 with d b^2
        sa, sb = (self.a > 0) - (self.a < 0), (self.b > 0) - (self.b < 0)
        if sa == sb or sa == 0:
            return sb
        return sa if self.a * self.a > self.d * self.b * self.b else sb

    def to_mpc(self, ctx: MPContext):
        a = ctx.mpf(self.a.numerator) / self.a.denominator
        if self.b == 0:
            return ctx.mpc(a)
        b = ctx.mpf(self.b.numerator) / self.b.denominator
        root = ctx.sqrt(ctx.mpf(self.d))
        return ctx.mpc(a) + b * root

    def __complex__(self) -> complex:
        ctx = MPContext()
        return complex(self.to_mpc(ctx))

    def __repr__(self) -> str:
        if self.b == 0:
            return f"FieldElem({self.a})"
        return f"FieldElem({self.a}, {self.b}, {self.d})"

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        rad = f"{self.b}*sqrt({self.d})" if self.b not in (1, -1) else f"sqrt({self.d})"
        if self.b == -1:
            rad = "-" + rad
        if self.a == 0:
            return f"({rad})"
        sep = "" if rad.startswith("-") else "+"
        return f"({self.a}{sep}{rad})"


class NumericElem:
    """Complex value with an absolute error bound ``err``.

    Arithmetic propagates first-order error bounds plus a rounding term at
    the working precision of the underlying mpmath context.
    """

    __slots__ = ("value", "err")

    def __init__(self, value, err=0):
        ctx = getattr(value, "context", None)
        if ctx is None:
            ctx = MPContext()
            ctx.prec = DEFAULT_PRECISION + 32
            value = ctx.mpc(value)
        else:
            value = ctx.mpc(value)
        object.__setattr__(self, "value", value)
        object.__setattr__(self, "err", ctx.mpf(err))

    def __setattr__(self, name, value):
        raise AttributeError("NumericElem is immutable")

    @property
    def ctx(self) -> MPContext:
        return self.value.context

    @property
    def re(self):
        return self.value.real

    @property
    def im(self):
        return self.value.imag

    def _ulp(self, v):
        ctx = self.ctx
        return abs(v) * ctx.ldexp(ctx.mpf(1), 2 - ctx.prec)

    def _coerce(self, other) -> NumericElem | None:
        if isinstance(other, NumericElem):
            return other
        ctx = self.ctx
        if isinstance(other, FieldElem):
            return NumericElem(other.to_mpc(ctx), 0)
        if isinstance(other, Fraction):
            return NumericElem(ctx.mpc(ctx.mpf(other.numerator) / other.denominator), 0)
        if isinstance(other, int):
            return NumericElem(ctx.mpc(other), 0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        v = self.value + o.value
        return NumericElem(v, self.err + o.err + self._ulp(v))

    __radd__ = __add__

    def __neg__(self) -> NumericElem:
        return NumericElem(-self.value, self.err)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        v = self.value * o.value
        err = abs(self.value) * o.err + abs(o.value) * self.err + self.err * o.err
        return NumericElem(v, err + self._ulp(v))

    __rmul__ = __mul__

    def inverse(self) -> NumericElem:
        m = abs(self.value)
        if m <= self.err:
            raise ZeroDivisionError("inverse of a value whose error disk contains zero")
        v = 1 / self.value
        return NumericElem(v, self.err / (m * (m - self.err)) + self._ulp(v))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int) -> NumericElem:
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return NumericElem(self.ctx.mpc(1), 0)
        v = self.value**n
        m = abs(self.value) + self.err
        err = n * m ** (n - 1) * self.err
        return NumericElem(v, err + n * self._ulp(v))

    def conjugate(self) -> NumericElem:
        return NumericElem(self.ctx.conj(self.value), self.err)

    def abs(self) -> NumericElem:
        return NumericElem(abs(self.value), self.err)

    def is_real(self) -> bool:
        return self.value.imag == 0

    def __complex__(self) -> complex:
        return complex(self.value)

    def __repr__(self) -> str:
        return f"NumericElem({self.format()}, err={self.ctx.nstr(self.err, 3)})"

    def format(self, digits: int | None = None) -> str:
        ctx = self.ctx
        if digits is None:
            digits = max(6, int(ctx.prec * 0.30103) - 12)
        re = ctx.nstr(self.value.real, digits)
        if abs(self.value.imag) <= self.err:
            return re
        im = ctx.nstr(abs(self.value.imag), digits)
        sign = "-" if self.value.imag < 0 else "+"
        return f"({re}{sign}{im}*i)"

    def __str__(self) -> str:
        return self.format()


def make_context(precision: int = DEFAULT_PRECISION, guard: int = 32) -> MPContext:
    """Fresh mpmath context, so concurrent callers never share precision state."""
    ctx = MPContext()
    ctx.prec = precision + guard
    return ctx

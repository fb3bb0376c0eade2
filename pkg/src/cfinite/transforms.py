"""Sequence operators expressed as rational-function algebra."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .poly import Poly, RatFunc, as_fraction, series_expand
from .recurrence import gf_to_rec

ONE_MINUS_X = Poly([1, -1])


def partial_sum(f: RatFunc) -> RatFunc:
    """Generating function of ``b(n) = a(0) + ... + a(n)``."""
    return RatFunc(f.num, f.den * ONE_MINUS_X)


def difference(f: RatFunc) -> RatFunc:
    """Generating function of ``a(0), a(1) - a(0), a(2) - a(1), ...``."""
    return RatFunc(f.num * ONE_MINUS_X, f.den)


def xd(f: RatFunc, m: int = 1) -> RatFunc:
    """Apply ``x d/dx`` ``m`` times, turning ``a(n)`` into ``n^m a(n)``."""
    if m < 0:
        raise ValueError("xD power must be nonnegative")
    for _ in range(m):
        num, den = f.num, f.den
        f = RatFunc(Poly([0, 1]) * (num.derivative() * den - num * den.derivative()), den * den)
    return f


def scale_arg(f: RatFunc, c) -> RatFunc:
    """``f(c x)``, the generating function of ``c^n a(n)``; ``c = 0`` keeps only ``a(0)``."""
    c = as_fraction(c)
    if c == 0:
        return RatFunc(f.num[0])
    return RatFunc(f.num.substitute_scaled(c), f.den.substitute_scaled(c))


def monomial_gf(c, m: int) -> RatFunc:
    """Generating function of ``c^n n^m``.

    >>> monomial_gf(1, 3)
    RatFunc('x + 4*x^2 + x^3', '1 - 4*x + 6*x^2 - 4*x^3 + x^4')
    """
    return xd(scale_arg(RatFunc.geometric(), c), m)


def affine(f: RatFunc, alpha, beta) -> RatFunc:
    """Generating function of ``alpha a(n) + beta``."""
    alpha, beta = as_fraction(alpha), as_fraction(beta)
    return f * alpha + RatFunc.geometric() * beta


def _charpoly(matrix: list[list[Fraction]]) -> list[Fraction]:
    """Characteristic polynomial coefficients (ascending, monic) by Faddeev-LeVerrier."""
    k = len(matrix)
    coeffs = [Fraction(0)] * k + [Fraction(1)]
    prod = [[Fraction(0)] * k for _ in range(k)]
    for j in range(1, k + 1):
        # prod <- A (prod + c_{k-j+1} I)
        shifted = [row[:] for row in prod]
        for i in range(k):
            shifted[i][i] += coeffs[k - j + 1]
        prod = _matmul(matrix, shifted)
        trace = sum(prod[i][i] for i in range(k))
        coeffs[k - j] = -trace / j
    return coeffs


def _matmul(a, b):
    n, m, p = len(a), len(b), len(b[0])
    return [[sum(a[i][t] * b[t][j] for t in range(m)) for j in range(p)] for i in range(n)]


def _companion(coeffs: Sequence[Fraction]) -> list[list[Fraction]]:
    """Companion matrix acting on state vectors ``(a(n), ..., a(n+k-1))``."""
    k = len(coeffs)
    mat = [[Fraction(0)] * k for _ in range(k)]
    for i in range(k - 1):
        mat[i][i + 1] = Fraction(1)
    mat[k - 1] = list(coeffs)
    return mat


def multisection(f: RatFunc, m: int, r: int) -> RatFunc:
    """Generating function of ``b(n) = a(m n + r)``.

    The characteristic polynomial of the ``m``-th power of the companion
    matrix annihilates every arithmetic-progression subsequence, so the
    computation stays over the rationals.
    """
    if m < 1 or not 0 <= r < m:
        raise ValueError("multisection needs m >= 1 and 0 <= r < m")
    if m == 1:
        return f
    rec, offset = gf_to_rec(f)
    k = rec.order
    comp = _companion(rec.coeffs)
    power = comp
    for _ in range(m - 1):
        power = _matmul(power, comp)
    den = Poly(_charpoly(power)).reversed()
    count = k + offset.offset
    source = series_expand(f, m * (count - 1) + r + 1)
    b = Poly(source[m * j + r] for j in range(count))
    return RatFunc((den * b).truncate(count), den)


def interleave(parts: Sequence[RatFunc]) -> RatFunc:
    """Merge ``m`` sequences round-robin: residue class ``r`` mod ``m`` comes from ``parts[r]``."""
    if not parts:
        raise ValueError("interleave needs at least one part")
    m = len(parts)
    if m == 1:
        return parts[0]
    num, den = Poly(), Poly([1])
    for r, p in enumerate(parts):
        pn = p.num.substitute_power(m) * Poly.monomial(r)
        pd = p.den.substitute_power(m)
        num, den = num * pd + pn * den, den * pd
    return RatFunc(num, den)

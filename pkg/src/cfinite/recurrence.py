"""Linear recurrences with constant coefficients and their generating functions.

A :class:`Recurrence` of order ``k`` encodes

    a(n+k) = c[k-1] a(n+k-1) + ... + c[0] a(n) + f(n),   n >= 0,

with initial values ``a(0) .. a(k-1)`` and an optional inhomogeneity ``f``
given by its (rational) generating function.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InsufficientTerms
from .linalg import solve_linear
from .poly import Poly, RatFunc, as_fraction, poly_divrem, series_expand


@dataclass(frozen=True)
class ValidityOffset:
    """The homogeneous relation holds for every ``n >= offset``."""

    offset: int = 0


@dataclass(frozen=True, init=False)
class Recurrence:
    coeffs: tuple[Fraction, ...]
    initial: tuple[Fraction, ...]
    inhomogeneity: RatFunc | None = None

    def __init__(self, coeffs: Sequence, initial: Sequence, inhomogeneity: RatFunc | None = None):
        c = [as_fraction(v) for v in coeffs]
        a = [as_fraction(v) for v in initial]
        if not c:
            raise ValueError("recurrence order must be at least 1")
        if len(c) != len(a):
            raise ValueError(f"order {len(c)} needs {len(c)} initial values, got {len(a)}")
        f = inhomogeneity
        if f is not None and not isinstance(f, RatFunc):
            f = RatFunc(f)
        if f is not None and f.is_zero():
            f = None
        c, a, f = _reduce_order(c, a, f)
        object.__setattr__(self, "coeffs", tuple(c))
        object.__setattr__(self, "initial", tuple(a))
        object.__setattr__(self, "inhomogeneity", f)

    @property
    def order(self) -> int:
        return len(self.coeffs)

    @property
    def is_homogeneous(self) -> bool:
        return self.inhomogeneity is None

    def characteristic_poly(self) -> Poly:
        """``t^k - c[k-1] t^(k-1) - ... - c[0]`` in the variable ``t``."""
        return Poly([-c for c in self.coeffs] + [1])

    def denominator(self) -> Poly:
        """``1 - c[k-1] x - ... - c[0] x^k``: the reversed characteristic polynomial."""
        return self.characteristic_poly().reversed()

    def __str__(self) -> str:
        from .parse import render_recurrence

        return render_recurrence(self)


def _reduce_order(c, a, f):
    """Strip vanishing ``c[0]``; early mismatches move into a polynomial inhomogeneity."""
    while c[0] == 0:
        k = len(c)
        if k == 1:
            # a(n+1) = f(n)  ->  a(n+1) = a(n) + (f(n) - a(n))
            fx = f if f is not None else RatFunc(0)
            g = RatFunc(Poly([1, -1])) * fx - a[0]
            return [Fraction(1)], a, (None if g.is_zero() else g)
        # relation shifted by one: a(m+k-1) = sum_{i>=1} c_i a(m+i-1) + g(m)
        g0 = a[k - 1] - sum(c[i] * a[i - 1] for i in range(1, k))
        g = RatFunc(g0)
        if f is not None:
            g = g + RatFunc(Poly([0, 1])) * f
        c, a, f = c[1:], a[: k - 1], (None if g.is_zero() else g)
    return c, a, f


def rec_to_gf(r: Recurrence) -> RatFunc:
    """Generating function of the sequence defined by ``r``.

    >>> rec_to_gf(Recurrence([1, 1], [2, 1]))
    RatFunc('2 - x', '1 - x - x^2')
    """
    k = r.order
    den = r.denominator()
    num = (den * Poly(r.initial)).truncate(k)
    f = r.inhomogeneity
    if f is None:
        return RatFunc(num, den)
    return RatFunc(num * f.den + Poly.monomial(k) * f.num, den * f.den)


def gf_to_rec(f: RatFunc) -> tuple[Recurrence, ValidityOffset]:
    """Recurrence read off the denominator of ``f``.

    Order equals ``deg den``. When ``deg num >= deg den`` the homogeneous
    relation only holds from ``offset = deg num - deg den + 1`` on; the
    early exceptions are carried as a polynomial inhomogeneity so that the
    returned recurrence still generates exactly the series of ``f``.
    """
    num, den = f.num, f.den
    if den.degree == 0:
        num, den = num * Poly([1, -1]), den * Poly([1, -1])
    k = den.degree
    coeffs = [-den[k - j] for j in range(k)]
    initial = series_expand(f, k)
    if num.degree < k:
        return Recurrence(coeffs, initial), ValidityOffset(0)
    offset = num.degree - k + 1
    return Recurrence(coeffs, initial, RatFunc(num.shift_down(k))), ValidityOffset(offset)


def terms(r: Recurrence, n: int) -> list[Fraction]:
    """First ``n`` terms by direct iteration of the relation."""
    out = list(r.initial[:n])
    k = r.order
    if n <= k:
        return out
    forcing = series_expand(r.inhomogeneity, n - k) if r.inhomogeneity is not None else None
    c = r.coeffs
    for m in range(n - k):
        v = sum(c[i] * out[m + i] for i in range(k))
        if forcing is not None:
            v += forcing[m]
        out.append(v)
    return out


def _powmod_x(n: int, modulus: Poly) -> Poly:
    """``t^n mod modulus`` by binary powering."""
    result = Poly([1])
    base = poly_divrem(Poly([0, 1]), modulus)[1]
    while n:
        if n & 1:
            result = poly_divrem(result * base, modulus)[1]
        base = poly_divrem(base * base, modulus)[1]
        n >>= 1
    return result


def _fast_homogeneous(coeffs, initial, n: int) -> Fraction:
    if n < len(initial):
        return initial[n]
    chi = Poly([-c for c in coeffs] + [1])
    red = _powmod_x(n, chi)
    return sum((red[i] * initial[i] for i in range(len(initial))), Fraction(0))


def nth_term_fast(r: Recurrence, n: int) -> Fraction:
    """``a(n)`` via ``t^n mod chi(t)``: O(k^2 log n) coefficient operations."""
    if n < 0:
        raise ValueError("index must be nonnegative")
    if r.is_homogeneous:
        return _fast_homogeneous(r.coeffs, r.initial, n)
    h = homogenize(r)
    if h.is_homogeneous:
        return _fast_homogeneous(h.coeffs, h.initial, n)
    # exceptions remain for indices below the validity offset
    start = h.inhomogeneity.num.degree + 1
    if n < start + h.order:
        return terms(h, n + 1)[n]
    tail = terms(h, start + h.order)[start:]
    return _fast_homogeneous(h.coeffs, tail, n - start)


def homogenize(r: Recurrence) -> Recurrence:
    """Equivalent homogeneous recurrence (identity on homogeneous input).

    If the generating function has ``deg num >= deg den`` no homogeneous
    form with ``c[0] != 0`` exists; the result then keeps a polynomial
    inhomogeneity describing the finitely many exceptions.
    """
    if r.is_homogeneous:
        return r
    return gf_to_rec(rec_to_gf(r))[0]


def guess_recurrence(prefix: Sequence, max_order: int) -> tuple[Recurrence, RatFunc] | None:
    """Smallest-order recurrence (``<= max_order``) consistent with all of ``prefix``.

    Solves the Hankel system ``a(n+d) = sum_i c_i a(n+i)`` over every
    available ``n`` exactly; returns ``None`` when no order up to
    ``max_order`` fits.
    """
    seq = [as_fraction(v) for v in prefix]
    if max_order < 1:
        raise ValueError("max_order must be at least 1")
    if len(seq) < 2 * max_order + 2:
        raise InsufficientTerms(
            f"need at least {2 * max_order + 2} terms for max_order {max_order}, got {len(seq)}"
        )
    for d in range(1, max_order + 1):
        rows = [seq[n : n + d] for n in range(len(seq) - d)]
        rhs = [seq[n + d] for n in range(len(seq) - d)]
        sol = solve_linear(rows, rhs, zero=Fraction(0))
        if sol is None:
            continue
        rec = Recurrence(sol, seq[:d])
        if terms(rec, len(seq)) != seq:
            continue
        return rec, rec_to_gf(rec)
    return None

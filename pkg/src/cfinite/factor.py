"""Denominator factorization: exact linear/quadratic factors plus certified numeric roots.

The input is split into squarefree parts (Yun's algorithm). Each part is
solved numerically with Aberth's simultaneous iteration; approximations are
then used to propose rational roots and rational quadratic factors, which are
only accepted after exact division. Whatever survives of degree three or more
stays numeric, each root carrying an inclusion radius ``deg * |p(z)/p'(z)|``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

from .errors import FactorizationFailure
from .fields import DEFAULT_PRECISION, NumericElem, make_context
from .poly import Poly, poly_divrem, poly_gcd

MAX_ABERTH_ITERATIONS = 2000


@dataclass(frozen=True)
class FactorList:
    """Factorization ``p = prod exact^m * prod residual^m``.

    ``exact_factors`` hold degree 1 or 2 polynomials with constant term one.
    ``numeric_factors`` are the exact residual polynomials (constant term one)
    whose roots are listed, with multiplicity, in ``numeric_roots``.
    ``unit`` is the scale turning the monic product of ``(x - z)`` over the
    numeric roots into the product of the residual polynomials.
    """

    exact_factors: tuple[tuple[Poly, int], ...]
    numeric_roots: tuple[tuple[NumericElem, int], ...] = ()
    numeric_factors: tuple[tuple[Poly, int], ...] = ()
    unit: Fraction = Fraction(1)
    precision: int = DEFAULT_PRECISION
    roots_by_factor: tuple[tuple[NumericElem, ...], ...] = field(default=(), repr=False)

    def exact_product(self) -> Poly:
        out = Poly([1])
        for f, m in self.exact_factors:
            out = out * f**m
        return out

    def residual_product(self) -> Poly:
        out = Poly([1])
        for f, m in self.numeric_factors:
            out = out * f**m
        return out

    def reconstruct(self) -> Poly:
        return self.exact_product() * self.residual_product()

    @property
    def is_exact(self) -> bool:
        return not self.numeric_roots


def normalize_constant(p: Poly) -> Poly:
    """Scale so the constant term is one (requires ``p(0) != 0``)."""
    return p.scale(1 / p[0])


def squarefree_decomposition(p: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm: ``p = c * prod S_i^i`` with ``S_i`` squarefree and coprime.

    Factors of degree zero are dropped; the remaining ones are returned
    with constant term one when ``p(0) != 0``, monic otherwise.
    """
    if p.degree < 1:
        return []
    dp = p.derivative()
    a = poly_gcd(p, dp)
    b = poly_divrem(p, a)[0]
    c = poly_divrem(dp, a)[0]
    d = c - b.derivative()
    out = []
    i = 1
    while b.degree > 0:
        ai = poly_gcd(b, d)
        b = poly_divrem(b, ai)[0]
        c = poly_divrem(d, ai)[0]
        d = c - b.derivative()
        if ai.degree > 0:
            out.append((normalize_constant(ai) if ai[0] != 0 else ai.monic(), i))
        i += 1
    return out


# -- numeric roots ---------------------------------------------------------------


def _mp_coeffs(p: Poly, ctx):
    return [ctx.mpf(c.numerator) / c.denominator for c in p.coeffs]


def _horner(coeffs, z):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def _horner_with_derivative(coeffs, z):
    val = 0
    der = 0
    for c in reversed(coeffs):
        der = der * z + val
        val = val * z + c
    return val, der


def _float_aberth(coeffs) -> list[complex] | None:
    """Cheap double-precision pass used only as a warm start; ``None`` if it stalls."""
    try:
        cs = [float(c) for c in coeffs]
    except OverflowError:
        return None
    n = len(cs) - 1
    radius = abs(cs[0] / cs[-1]) ** (1.0 / n) or 1.0
    z = [radius * cmath.exp(1j * (2 * math.pi * k / n + 0.4 / n)) for k in range(n)]
    for _ in range(500):
        biggest = 0.0
        for i in range(n):
            zi = z[i]
            val, der = _horner_with_derivative(cs, zi)
            if val == 0:
                continue
            try:
                ratio = val / der
                repulsion = sum(1 / (zi - z[j]) for j in range(n) if j != i)
                step = ratio / (1 - ratio * repulsion)
            except (ZeroDivisionError, OverflowError):
                return None
            z[i] = zi - step
            biggest = max(biggest, abs(step) / max(1.0, abs(z[i])))
        if not math.isfinite(biggest):
            return None
        if biggest < 1e-13:
            return z
    return None


def _aberth(coeffs, ctx):
    n = len(coeffs) - 1
    warm = _float_aberth(coeffs)
    if warm is not None:
        z = [ctx.mpc(w) for w in warm]
    else:
        lead = coeffs[-1]
        # geometric mean of root moduli as the starting radius
        radius = abs(coeffs[0] / lead) ** (ctx.mpf(1) / n)
        if radius == 0:
            radius = ctx.mpf(1)
        z = [radius * ctx.expjpi(ctx.mpf(2 * k) / n + ctx.mpf("0.4") / n) for k in range(n)]
    tol = ctx.ldexp(ctx.mpf(1), -ctx.prec + 8)
    for _ in range(MAX_ABERTH_ITERATIONS):
        biggest = ctx.mpf(0)
        for i in range(n):
            zi = z[i]
            val, der = _horner_with_derivative(coeffs, zi)
            if val == 0:
                continue
            ratio = val / der if der != 0 else ctx.mpc(tol)
            repulsion = ctx.fsum(1 / (zi - z[j]) for j in range(n) if j != i)
            step = ratio / (1 - ratio * repulsion)
            z[i] = zi - step
            biggest = max(biggest, abs(step) / max(1, abs(z[i])))
        if biggest < tol:
            return z
    raise FactorizationFailure("Aberth iteration did not converge; raise the precision")


def _newton_polish(coeffs, z, ctx, rounds=3):
    for _ in range(rounds):
        val, der = _horner_with_derivative(coeffs, z)
        if der == 0 or val == 0:
            break
        z = z - val / der
    return z


def _inclusion_radius(coeffs, z, ctx):
    """Radius of a disk around ``z`` guaranteed to contain a root."""
    n = len(coeffs) - 1
    val, der = _horner_with_derivative(coeffs, z)
    az = abs(z)
    rounding = ctx.ldexp(ctx.mpf(1), -ctx.prec + 2) * (n + 1) * ctx.fsum(
        abs(c) * az**k for k, c in enumerate(coeffs)
    )
    if der == 0:
        return ctx.inf
    return n * (abs(val) + rounding) / abs(der)


def certified_roots(p: Poly, precision: int = DEFAULT_PRECISION, ctx=None) -> list[NumericElem]:
    """All complex roots of the squarefree polynomial ``p`` with error bounds.

    Each returned :class:`NumericElem` has ``err`` below ``2**(-precision/2)``;
    the inclusion disks are pairwise disjoint, so every root is found once.
    Real roots come out with zero imaginary part and complex roots in exact
    conjugate pairs.
    """
    n = p.degree
    if n < 1:
        return []
    if ctx is None:
        bits = max(c.numerator.bit_length() + c.denominator.bit_length() for c in p.coeffs)
        ctx = make_context(precision, guard=48 + 4 * n + bits)
    coeffs = _mp_coeffs(p, ctx)
    if n == 1:
        zs = [-coeffs[0] / coeffs[1]]
    else:
        zs = [_newton_polish(coeffs, z, ctx) for z in _aberth(coeffs, ctx)]
    radii = [_inclusion_radius(coeffs, z, ctx) for z in zs]
    bound = ctx.ldexp(ctx.mpf(1), -(precision // 2))
    for i in range(n):
        if not radii[i] < bound:
            raise FactorizationFailure(
                f"root {ctx.nstr(zs[i], 10)} could not be certified at {precision} bits"
            )
        for j in range(i):
            if abs(zs[i] - zs[j]) <= radii[i] + radii[j]:
                raise FactorizationFailure("inclusion disks overlap; raise the precision")

    # Coefficients are real: snap near-real roots, pair the rest.
    roots: list[NumericElem | None] = [None] * n
    used = [False] * n
    for i in range(n):
        z = ctx.mpc(zs[i])
        if abs(z.imag) <= radii[i]:
            roots[i] = NumericElem(ctx.mpc(z.real), 2 * radii[i])
            used[i] = True
    for i in range(n):
        if used[i] or zs[i].imag < 0:
            continue
        target = ctx.conj(zs[i])
        j = min(
            (k for k in range(n) if not used[k] and k != i),
            key=lambda k: abs(zs[k] - target),
            default=None,
        )
        if j is None:
            raise FactorizationFailure("unpaired complex root of a real polynomial")
        mid = (zs[i] + ctx.conj(zs[j])) / 2
        err = max(radii[i], radii[j]) + abs(zs[i] - mid)
        roots[i] = NumericElem(mid, err)
        roots[j] = NumericElem(ctx.conj(mid), err)
        used[i] = used[j] = True
    if not all(used):
        raise FactorizationFailure("unpaired complex root of a real polynomial")
    return sorted(roots, key=lambda r: (float(abs(r.value)), float(r.value.real), float(r.value.imag)))


# -- exact factor extraction -----------------------------------------------------------


def _nearest_int(x, ctx):
    k = int(ctx.nint(x))
    return k, abs(x - k)


def _split_rational_quadratic(q: Poly) -> list[Poly] | None:
    """Linear factors of a quadratic with a rational square discriminant."""
    c0, c1, c2 = q.coeffs
    disc = c1 * c1 - 4 * c2 * c0
    if disc < 0:
        return None
    num, den = disc.numerator, disc.denominator
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn != num or rd * rd != den:
        return None
    s = Fraction(rn, rd)
    roots = [(-c1 + s) / (2 * c2), (-c1 - s) / (2 * c2)]
    return [Poly([1, -1 / r]) for r in roots]


def _extract_exact(part: Poly, roots: list[NumericElem], ctx):
    """Peel rational and rational-quadratic factors off a squarefree polynomial."""
    _, ints = part.content_primitive()
    lead = abs(ints[-1])
    loose = ctx.ldexp(ctx.mpf(1), -(ctx.prec // 3))
    factors: list[Poly] = []
    remaining = list(range(len(roots)))
    residual = part

    def try_divide(candidate: Poly) -> bool:
        nonlocal residual
        quot, rem = poly_divrem(residual, candidate)
        if rem:
            return False
        residual = quot
        factors.append(candidate)
        return True

    for i in list(remaining):
        z = roots[i].value
        if abs(z.imag) > loose:
            continue
        k, dist = _nearest_int(z.real * lead, ctx)
        if dist > loose * lead or k == 0:
            continue
        if try_divide(Poly([1, Fraction(-lead, k)])):
            remaining.remove(i)

    progress = True
    while progress and len(remaining) >= 2:
        progress = False
        for a in range(len(remaining)):
            for b in range(a + 1, len(remaining)):
                zi, zj = roots[remaining[a]].value, roots[remaining[b]].value
                s, p = zi + zj, zi * zj
                if abs(s.imag) > loose or abs(p.imag) > loose:
                    continue
                ks, ds = _nearest_int(s.real * lead, ctx)
                kp, dp = _nearest_int(p.real * lead, ctx)
                if ds > loose * lead or dp > loose * lead or kp == 0:
                    continue
                # x^2 - s x + p, rescaled to constant term one
                cand = normalize_constant(Poly([Fraction(kp, lead), Fraction(-ks, lead), 1]))
                if try_divide(cand):
                    ia, ib = remaining[a], remaining[b]
                    remaining.remove(ia)
                    remaining.remove(ib)
                    progress = True
                    break
            if progress:
                break

    if residual.degree in (1, 2):
        # An exact residual of low degree is itself exact.
        split = _split_rational_quadratic(residual) if residual.degree == 2 else None
        factors.extend(split if split else [normalize_constant(residual)])
        residual, remaining = Poly([1]), []
    return factors, normalize_constant(residual), [roots[i] for i in remaining]


def factor_denominator(p: Poly, precision: int = DEFAULT_PRECISION) -> FactorList:
    """Factor a generating-function denominator (``p(0) == 1``).

    Rational roots and irreducible rational quadratics are returned exactly;
    irreducible parts of degree three or more are resolved into certified
    numeric roots. Multiplicities come from the squarefree decomposition.
    """
    if not p:
        raise ValueError("cannot factor the zero polynomial")
    if p[0] != 1:
        raise ValueError("denominator must have constant term 1")
    exact: list[tuple[Poly, int]] = []
    numeric: list[tuple[NumericElem, int]] = []
    numeric_factors: list[tuple[Poly, int]] = []
    by_factor: list[tuple[NumericElem, ...]] = []
    unit = Fraction(1)
    for part, mult in squarefree_decomposition(p):
        roots = certified_roots(part, precision)
        ctx = roots[0].ctx
        factors, residual, left = _extract_exact(part, roots, ctx)
        exact.extend((f, mult) for f in factors)
        if residual.degree > 0:
            numeric_factors.append((residual, mult))
            numeric.extend((r, mult) for r in left)
            by_factor.append(tuple(left))
            unit *= residual.lc**mult
    exact.sort(key=lambda fm: (fm[0].degree, [-c for c in fm[0].coeffs]))
    return FactorList(
        exact_factors=tuple(exact),
        numeric_roots=tuple(numeric),
        numeric_factors=tuple(numeric_factors),
        unit=unit,
        precision=precision,
        roots_by_factor=tuple(by_factor),
    )

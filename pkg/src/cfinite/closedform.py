"""Partial fractions, exponential-polynomial closed forms, and growth estimates.

A proper generating function ``N/D`` is split over the coprime prime-power
blocks of ``D``. For each block the terms ``sum_k c_k n^k rho^n`` over its
growth bases ``rho = 1/z`` are fitted by a confluent Vandermonde system on
the block's first ``deg`` terms. Blocks from rational and quadratic factors
are solved exactly in ``Q(sqrt d)``; residual factors of degree three or
more are solved with error-bounded complex arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .errors import CFiniteError, IllConditioned
from .factor import FactorList, factor_denominator
from .fields import DEFAULT_PRECISION, FieldElem, NumericElem, make_context
from .linalg import solve_linear
from .poly import Poly, RatFunc, poly_divrem, poly_xgcd, series_expand

Scalar = Union[FieldElem, NumericElem]


class InvariantViolation(CFiniteError):
    """An internal consistency check failed (CLI exit status 3)."""


# -- result types ---------------------------------------------------------------------


@dataclass(frozen=True)
class ClosedFormTerm:
    """``coeff * n^power * base^n``; ``group`` identifies the root the base comes from."""

    base: Scalar
    power: int
    coeff: Scalar
    group: int = 0

    @property
    def is_exact(self) -> bool:
        return isinstance(self.base, FieldElem) and isinstance(self.coeff, FieldElem)


@dataclass(frozen=True)
class ClosedForm:
    """``a(n) = sum(terms) + corrections[n]`` (``corrections`` vanish past their length)."""

    terms: tuple[ClosedFormTerm, ...]
    corrections: tuple[Fraction, ...] = ()
    precision: int = DEFAULT_PRECISION

    @property
    def exact(self) -> bool:
        return all(t.is_exact for t in self.terms)

    @property
    def order(self) -> int:
        return len(self.terms)

    def __call__(self, n: int):
        return eval_closed_form(self, n)

    def __str__(self) -> str:
        return render_closed_form(self)


@dataclass(frozen=True)
class PartialFraction:
    """``numerator / factor^power`` for an exact factor, or ``numerator / (root - x)^power``."""

    numerator: Poly | Scalar
    factor: Poly | Scalar
    power: int

    @property
    def is_exact(self) -> bool:
        return isinstance(self.factor, Poly)


@dataclass(frozen=True)
class RootResidue:
    """Constant ``residue`` of ``residue / (root - x)^power`` in the root-level splitting."""

    root: Scalar
    power: int
    residue: Scalar


@dataclass(frozen=True)
class AsymptoticEstimate:
    growth_modulus: Scalar
    dominant_bases: tuple[Scalar, ...]
    leading_power: int
    leading_coeff: Scalar | None
    oscillatory: bool

    def __str__(self) -> str:
        if self.oscillatory or self.leading_coeff is None:
            return f"|a(n)| grows like {_fmt(self.growth_modulus)}^n (oscillating dominant terms)"
        npow = "" if self.leading_power == 0 else f" * n^{self.leading_power}"
        return f"a(n) ~ {_fmt(self.leading_coeff)}{npow} * {_fmt(self.dominant_bases[0])}^n"


@dataclass(frozen=True)
class VerifyReport:
    count: int
    exact: bool
    passed: bool
    worst_deviation: object
    worst_index: int | None
    first_mismatch: int | None
    mismatches: tuple[int, ...] = field(default=())

    def __bool__(self) -> bool:
        return self.passed


# -- blocks ----------------------------------------------------------------------------------


@dataclass
class _Block:
    factor: Poly  # irreducible exact factor, or squarefree residual
    multiplicity: int
    numerator: Poly  # deg < deg(factor^multiplicity)
    roots: tuple[Scalar, ...]
    exact: bool

    @property
    def poly(self) -> Poly:
        return self.factor**self.multiplicity


def _exact_roots(q: Poly) -> tuple[FieldElem, ...]:
    if q.degree == 1:
        return (FieldElem(-q[0] / q[1]),)
    c0, c1, c2 = q.coeffs
    root = FieldElem.sqrt(c1 * c1 - 4 * c2 * c0)
    return ((root - c1) / (2 * c2), (-root - c1) / (2 * c2))


def _blocks(rem: Poly, den: Poly, factors: FactorList) -> list[_Block]:
    pieces = [(q, m, _exact_roots(q), True) for q, m in factors.exact_factors]
    pieces += [
        (r, m, roots, False)
        for (r, m), roots in zip(factors.numeric_factors, factors.roots_by_factor)
    ]
    blocks = []
    for q, m, roots, exact in pieces:
        p = q**m
        cofactor = poly_divrem(den, p)[0]
        g, s, _ = poly_xgcd(cofactor, p)
        if g != Poly([1]):
            raise InvariantViolation("denominator blocks are not coprime")
        num = poly_divrem(rem * s, p)[1]
        blocks.append(_Block(q, m, num, roots, exact))
    return blocks


def _split(f: RatFunc, precision: int):
    quot, rem = poly_divrem(f.num, f.den)
    if f.den.degree < 1:
        return quot, rem, []
    factors = factor_denominator(f.den, precision)
    return quot, rem, _blocks(rem, f.den, factors)


# -- generic polynomial helpers over FieldElem / NumericElem ------------------------------------


def _divide_linear(coeffs, z):
    """Quotient of ``p(x)`` by ``(x - z)``, ascending coefficients."""
    n = len(coeffs) - 1
    out = [None] * n
    acc = coeffs[n]
    for i in range(n - 1, -1, -1):
        out[i] = acc
        acc = coeffs[i] + z * acc
    return out


def _taylor_shift(coeffs, z):
    """Coefficients of ``p(z + t)`` in ``t``."""
    work = list(coeffs)
    out = []
    while work:
        # remainder of division by (x - z) is the next Taylor coefficient
        acc = work[-1]
        quotient = [None] * (len(work) - 1)
        for i in range(len(work) - 2, -1, -1):
            quotient[i] = acc
            acc = work[i] + z * acc
        out.append(acc)
        work = quotient
    return out


def _series_divide(a, b, count):
    out = []
    inv = 1 / b[0]
    for i in range(count):
        acc = a[i] if i < len(a) else 0 * inv
        for j in range(1, min(i, len(b) - 1) + 1):
            acc = acc - b[j] * out[i - j]
        out.append(acc * inv)
    return out


def _lift(values, like):
    if isinstance(like, NumericElem):
        return [NumericElem(like.ctx.mpc(0)) + v for v in values]
    return [FieldElem(v) for v in values]


def _residues_at(numerator: Poly, block_poly: Poly, z, mult: int):
    """``K_e`` with ``N/P = sum_e K_e / (z - x)^e + (terms regular at z)``."""
    h = _lift(block_poly.coeffs, z)
    for _ in range(mult):
        h = [-c for c in _divide_linear(h, z)]
    num = _lift(numerator.coeffs or [Fraction(0)], z)
    g = _series_divide(_taylor_shift(num, z), _taylor_shift(h, z), mult)
    return {e: g[mult - e] * (-1) ** (mult - e) for e in range(1, mult + 1)}


# -- public operations ---------------------------------------------------------------------------


def partial_fractions(f: RatFunc, precision: int = DEFAULT_PRECISION) -> list[PartialFraction]:
    """Decompose a proper ``f`` over its denominator factors.

    Exact factors get polynomial numerators of degree below the factor
    degree, one per power. Residual factors of degree >= 3 are split over
    their numeric roots in the basis ``K / (z - x)^e``.
    """
    if not f.is_proper():
        raise ValueError("partial_fractions needs deg num < deg den; split off the polynomial part")
    _, _, blocks = _split(f, precision)
    out: list[PartialFraction] = []
    for b in blocks:
        if b.exact:
            # q-adic expansion of the block numerator
            rest = b.numerator
            for e in range(b.multiplicity, 0, -1):
                rest, digit = poly_divrem(rest, b.factor)
                if digit:
                    out.append(PartialFraction(digit, b.factor, e))
        else:
            for z in b.roots:
                for e, k in _residues_at(b.numerator, b.poly, z, b.multiplicity).items():
                    out.append(PartialFraction(k, z, e))
    return out


def root_residues(f: RatFunc, precision: int = DEFAULT_PRECISION) -> list[RootResidue]:
    """Split a proper ``f`` completely over the roots ``z`` of its denominator.

    Returns constants ``K`` with ``f = sum K / (z - x)^e``; exact for
    rational and quadratic roots, error-bounded otherwise.
    """
    if not f.is_proper():
        raise ValueError("root_residues needs deg num < deg den")
    _, _, blocks = _split(f, precision)
    out = []
    for b in blocks:
        for z in b.roots:
            for e, k in sorted(_residues_at(b.numerator, b.poly, z, b.multiplicity).items()):
                out.append(RootResidue(z, e, k))
    return out


def _solve_block(b: _Block, precision: int, group0: int) -> list[ClosedFormTerm]:
    size = b.poly.degree
    seq = _block_terms(b.numerator, b.poly, size)
    bases = [1 / z for z in b.roots]
    unknowns = [(g, k) for g in range(len(bases)) for k in range(b.multiplicity)]
    rows = []
    for n in range(size):
        rows.append([bases[g] ** n * (n**k) for g, k in unknowns])
    if b.exact:
        sol = solve_linear(rows, [FieldElem(v) for v in seq], zero=FieldElem(0))
        if sol is None:
            raise InvariantViolation("singular Vandermonde system for exact roots")
    else:
        sol = _symmetrize(bases, unknowns, _solve_numeric(rows, seq, precision))
    return [
        ClosedFormTerm(bases[g], k, c, group0 + g) for (g, k), c in zip(unknowns, sol)
    ]


def _symmetrize(bases, unknowns, sol):
    """Real sequences: real bases get real coefficients, conjugate bases conjugate ones."""
    index = {u: i for i, u in enumerate(unknowns)}
    out = list(sol)
    for g, base in enumerate(bases):
        ctx = base.ctx
        if base.value.imag == 0:
            for (gg, k), i in index.items():
                if gg == g:
                    c = out[i]
                    out[i] = NumericElem(ctx.mpc(c.value.real), c.err + abs(c.value.imag))
        elif base.value.imag > 0:
            partner = min(
                (h for h in range(len(bases)) if h != g),
                key=lambda h: abs(bases[h].value - ctx.conj(base.value)),
            )
            for (gg, k), i in index.items():
                if gg == g:
                    j = index[(partner, k)]
                    mid = (out[i].value + ctx.conj(out[j].value)) / 2
                    err = max(out[i].err, out[j].err) + abs(out[i].value - mid)
                    out[i] = NumericElem(mid, err)
                    out[j] = NumericElem(ctx.conj(mid), err)
    return out


def _block_terms(num: Poly, den: Poly, count: int) -> list[Fraction]:
    out: list[Fraction] = []
    for k in range(count):
        acc = num[k]
        for i in range(1, min(k, den.degree) + 1):
            acc -= den[i] * out[k - i]
        out.append(acc)
    return out


def _solve_numeric(rows, rhs, precision: int) -> list[NumericElem]:
    n = len(rows)
    ctx = rows[0][0].ctx
    a = [list(r) for r in rows]
    target = [ctx.mpf(v.numerator) / v.denominator for v in rhs]
    b = [NumericElem(ctx.mpc(v)) for v in target]
    for col in range(n):
        piv = max(range(col, n), key=lambda i: abs(a[i][col].value))
        if abs(a[piv][col].value) <= a[piv][col].err:
            raise IllConditioned("numeric Vandermonde system is singular at this precision")
        a[col], a[piv] = a[piv], a[col]
        b[col], b[piv] = b[piv], b[col]
        for i in range(col + 1, n):
            factor = a[i][col] / a[col][col]
            a[i] = [x - factor * y for x, y in zip(a[i], a[col])]
            b[i] = b[i] - factor * b[col]
    x: list[NumericElem] = [None] * n
    for i in range(n - 1, -1, -1):
        acc = b[i]
        for j in range(i + 1, n):
            acc = acc - a[i][j] * x[j]
        x[i] = acc / a[i][i]
    tol = ctx.ldexp(ctx.mpf(1), -(precision // 2))
    for i, r in enumerate(rows):
        resid = abs(ctx.fsum(c.value * xi.value for c, xi in zip(r, x)) - target[i])
        if resid > tol:
            raise IllConditioned(f"Vandermonde residual {ctx.nstr(resid, 5)} exceeds tolerance")
    for xi in x:
        if xi.err > tol * max(1, abs(xi.value)):
            raise IllConditioned("closed-form coefficient error bound exceeds tolerance")
    return x


def closed_form(f: RatFunc, precision: int = DEFAULT_PRECISION) -> ClosedForm:
    """Exponential-polynomial closed form of the coefficients of ``f``.

    One term per (root, power) pair of the denominator. A polynomial part
    (``deg num >= deg den``) is recorded as ``corrections``.
    """
    quot, rem, blocks = _split(f, precision)
    terms: list[ClosedFormTerm] = []
    group = 0
    for b in blocks:
        terms.extend(_solve_block(b, precision, group))
        group += len(b.roots)
    return ClosedForm(tuple(terms), tuple(quot.coeffs), precision)


def _combine(cf: ClosedForm, n: int, powers):
    """Sum of ``coeff * n^power * base^n`` given the ``base^n`` values."""
    correction = cf.corrections[n] if n < len(cf.corrections) else Fraction(0)
    exact_sums: dict = {}
    numeric = None
    for t, bn in zip(cf.terms, powers):
        v = t.coeff * bn * (n**t.power)
        if isinstance(v, NumericElem):
            numeric = v if numeric is None else numeric + v
        else:
            key = v.d if v.b != 0 else None
            exact_sums[key] = exact_sums.get(key, FieldElem(0)) + v
    total = Fraction(correction)
    for v in exact_sums.values():
        if v.b != 0:
            raise InvariantViolation(f"irrational part {v} survived at n={n}")
        total += v.a
    if numeric is None:
        return total
    return numeric + total


def eval_closed_form(cf: ClosedForm, n: int):
    """Value at ``n``: a :class:`Fraction` when exact, else a :class:`NumericElem`."""
    if n < 0:
        raise ValueError("index must be nonnegative")
    return _combine(cf, n, [t.base**n for t in cf.terms])


def _prefix_values(cf: ClosedForm, count: int):
    """Values at ``n = 0 .. count-1``, reusing ``base^n`` from one step to the next.

    An evaluation whose irrational parts fail to cancel yields ``None``.
    """
    powers = [t.base**0 for t in cf.terms]
    for n in range(count):
        try:
            yield _combine(cf, n, powers)
        except InvariantViolation:
            yield None
        powers = [p * t.base for p, t in zip(powers, cf.terms)]


def verify(cf: ClosedForm, f: RatFunc, count: int) -> VerifyReport:
    """Compare the closed form with the series of ``f`` on ``n = 0 .. count-1``.

    An index where the closed form does not even evaluate to a rational
    counts as a mismatch.
    """
    series = series_expand(f, count)
    worst, worst_at = Fraction(0), None
    mismatches = []
    for n, (a, v) in enumerate(zip(series, _prefix_values(cf, count))):
        if v is None:
            mismatches.append(n)
            continue
        if isinstance(v, NumericElem):
            dev = abs(v.value - (v.ctx.mpf(a.numerator) / a.denominator))
            bad = dev > v.err
        else:
            dev = abs(v - a)
            bad = dev != 0
        if worst_at is None or dev > worst:
            worst, worst_at = dev, n
        if bad:
            mismatches.append(n)
    return VerifyReport(
        count=count,
        exact=cf.exact,
        passed=not mismatches,
        worst_deviation=worst,
        worst_index=worst_at,
        first_mismatch=mismatches[0] if mismatches else None,
        mismatches=tuple(mismatches),
    )


def _modulus(base: Scalar):
    return base.abs()


def _mp(value: Scalar, ctx):
    if isinstance(value, NumericElem):
        return value.value
    return value.to_mpc(ctx)


def asymptotic(f: RatFunc, precision: int = DEFAULT_PRECISION) -> AsymptoticEstimate:
    """Dominant growth ``max |1/z|`` over denominator roots and, when unique, its term."""
    if f.is_zero():
        raise ValueError("the zero sequence has no growth rate")
    cf = closed_form(f, precision)
    if not cf.terms:
        return AsymptoticEstimate(FieldElem(0), (), 0, None, False)
    ctx = make_context(precision)
    groups: dict[int, list[ClosedFormTerm]] = {}
    for t in cf.terms:
        groups.setdefault(t.group, []).append(t)
    mods = {g: _modulus(ts[0].base) for g, ts in groups.items()}
    approx = {g: abs(_mp(m, ctx)) for g, m in mods.items()}
    top = max(groups, key=lambda g: approx[g])
    slack = ctx.ldexp(ctx.mpf(1), -(precision // 2))

    def ties(g):
        a, b = mods[g], mods[top]
        if isinstance(a, FieldElem) and isinstance(b, FieldElem):
            return a == b
        err = (a.err if isinstance(a, NumericElem) else 0) + (b.err if isinstance(b, NumericElem) else 0)
        return abs(approx[g] - approx[top]) <= err + slack

    dominant = [g for g in groups if ties(g)]
    modulus = mods[top]
    if isinstance(modulus, NumericElem):
        modulus = NumericElem(ctx.mpc(modulus.value.real), modulus.err)
    lead = []
    for g in dominant:
        for t in groups[g]:
            if not _is_zero(t.coeff):
                lead.append(t)
    power = max((t.power for t in lead), default=0)
    bases = tuple(groups[g][0].base for g in dominant)
    unique_positive = len(dominant) == 1 and _is_positive_real(bases[0])
    coeff = None
    if unique_positive:
        coeff = next(t.coeff for t in lead if t.power == power)
    return AsymptoticEstimate(modulus, bases, power, coeff, not unique_positive)


def _is_zero(v: Scalar) -> bool:
    if isinstance(v, NumericElem):
        return abs(v.value) <= v.err
    return not v


def _is_positive_real(v: Scalar) -> bool:
    if isinstance(v, NumericElem):
        return v.value.imag == 0 and v.value.real > 0
    return v.is_real and v.sign() > 0


# -- rendering -----------------------------------------------------------------------------------


def _fmt(v) -> str:
    if isinstance(v, NumericElem):
        return v.format()
    s = str(v)
    if isinstance(v, FieldElem) and v.is_rational and (v.a < 0 or v.a.denominator != 1):
        return f"({s})"
    return s


def render_term(t: ClosedFormTerm) -> str:
    parts = [_fmt(t.coeff)]
    if t.power == 1:
        parts.append("n")
    elif t.power > 1:
        parts.append(f"n^{t.power}")
    if not (isinstance(t.base, FieldElem) and t.base == 1):
        parts.append(f"{_fmt(t.base)}^n")
    return " * ".join(parts)


def render_closed_form(cf: ClosedForm) -> str:
    pieces = [render_term(t) for t in cf.terms if not _is_zero(t.coeff)]
    pieces += [f"{c}*[n={j}]" for j, c in enumerate(cf.corrections) if c]
    return " + ".join(pieces) if pieces else "0"

"""Worked examples with their known answers, runnable as one self-check."""

from __future__ import annotations

from fractions import Fraction
from typing import Callable

from .closedform import asymptotic, closed_form, eval_closed_form, root_residues, verify
from .factor import factor_denominator
from .fields import FieldElem, make_context
from .parse import parse_ratfunc, parse_recurrence
from .poly import Poly, RatFunc
from .recurrence import gf_to_rec, guess_recurrence, rec_to_gf, terms
from .transforms import affine, interleave, monomial_gf, multisection, partial_sum, scale_arg, xd

# Perrin numbers a(0..20) next to the printed approximation rho^n (row 0 prints a(0) instead).
PERRIN_TABLE = [
    (0, 3, 3.000000), (1, 0, 1.324717), (2, 2, 1.754877), (3, 3, 2.324717),
    (4, 2, 3.079595), (5, 5, 4.079595), (6, 5, 5.404313), (7, 7, 7.159191),
    (8, 10, 9.483909), (9, 12, 12.563504), (10, 17, 16.643100), (11, 22, 22.047414),
    (12, 29, 29.206605), (13, 39, 38.690514), (14, 51, 51.254019), (15, 68, 67.897119),
    (16, 90, 89.944533), (17, 119, 119.15113), (18, 158, 157.84165), (19, 209, 209.09567),
    (20, 277, 276.99279),
]

LUCAS = [2, 1, 3, 4, 7, 11, 18, 29, 47, 76, 123]
TRISECTION = [0, 1, 6, 27, 116, 493, 2090, 8855, 37512, 158905]


def _lucas():
    r = parse_recurrence("a(n+2)=a(n+1)+a(n); a(0)=2; a(1)=1")
    f = rec_to_gf(r)
    ok = f == parse_ratfunc("(2-x)/(1-x-x^2)")
    cf = closed_form(f)
    phi = FieldElem(Fraction(1, 2), Fraction(1, 2), 5)
    bases = sorted((t.base for t in cf.terms), key=lambda b: b.b)
    ok &= bases == [phi.conjugate(), phi] and all(t.coeff == 1 for t in cf.terms)
    values = [eval_closed_form(cf, n) for n in range(11)]
    ok &= values == LUCAS and terms(r, 11) == LUCAS
    return ok, f"L(x) = {f}; a(n) = {cf}"


def _power_identities():
    geo = RatFunc.geometric()
    expected = [
        "x/(1-x)^2",
        "x*(x+1)/(1-x)^3",
        "x*(x^2+4*x+1)/(1-x)^4",
        "x*(x+1)*(x^2+10*x+1)/(1-x)^5",
    ]
    ok = all(xd(geo, m + 1) == parse_ratfunc(e) for m, e in enumerate(expected))
    c = Fraction(3)
    ok &= monomial_gf(c, 2).series(6) == [c**n * n * n for n in range(6)]
    return ok, "(xD)^m 1/(1-x) for m = 1..4"


def _two_roots():
    r = parse_recurrence("a(n+2)=5*a(n+1)-6*a(n); a(0)=2; a(1)=5")
    f = rec_to_gf(r)
    fl = factor_denominator(f.den)
    roots = sorted(-p[0] / p[1] for p, _ in fl.exact_factors)
    ok = f.den == Poly([1, -5, 6]) and roots == [Fraction(1, 3), Fraction(1, 2)]
    est = asymptotic(f)
    ok &= est.growth_modulus == 3
    cf = closed_form(f)
    ok &= sorted(t.base.a for t in cf.terms) == [2, 3] and all(t.coeff == 1 for t in cf.terms)
    return ok, f"roots {roots}, growth {est.growth_modulus}, a(n) = {cf}"


def _perrin(precision: int = 128):
    r = parse_recurrence("a(n+3)=a(n+1)+a(n); a(0)=3; a(1)=0; a(2)=2")
    f = rec_to_gf(r)
    ok = f == parse_ratfunc("(3-x^2)/(1-x^2-x^3)")
    back, offset = gf_to_rec(f)
    ok &= back == r and offset.offset == 0
    cf = closed_form(f, precision)
    ctx = make_context(precision)
    tol = ctx.mpf(10) ** -20
    ok &= all(abs(t.coeff.value - 1) < tol for t in cf.terms)
    for n, a, _ in PERRIN_TABLE:
        v = eval_closed_form(cf, n)
        ok &= int(ctx.nint(v.value.real)) == a
    est = asymptotic(f, precision)
    rho = ctx.findroot(lambda t: t**3 - t - 1, 1.3)
    ok &= abs(est.growth_modulus.value - rho) < tol
    for n, _, approx in PERRIN_TABLE[1:]:
        ok &= abs(rho**n - approx) <= 1e-3 * approx
    ok &= bool(verify(cf, f, 30))
    return ok, f"growth {est.growth_modulus.format(20)}"


def _trisection():
    fib = parse_ratfunc("x/(1-x-x^2)")
    sub = multisection(fib, 3, 1)
    ok = sub.series(7) == [1, 3, 13, 55, 233, 987, 4181]
    f = affine(sub, Fraction(1, 2), Fraction(-1, 2))
    ok &= f == parse_ratfunc("(x+x^2)/((1-x)*(1-4*x-x^2))")
    r = parse_recurrence("a(n+2)=4*a(n+1)+a(n)+2; a(0)=0; a(1)=1")
    ok &= rec_to_gf(r) == f
    cf = closed_form(f)
    coeffs = {t.base: t.coeff for t in cf.terms}
    s5 = FieldElem(0, 1, 5)
    ok &= coeffs.get(FieldElem(1)) == Fraction(-1, 2)
    ok &= coeffs.get(s5 + 2) == (s5 + 5) / 20 and coeffs.get(2 - s5) == (5 - s5) / 20
    ok &= [eval_closed_form(cf, n) for n in range(10)] == TRISECTION
    return ok, f"a(n) = {cf}"


def _cubes():
    cubes = xd(RatFunc.geometric(), 3)
    f = partial_sum(cubes)
    ok = f == parse_ratfunc("x*(x^2+4*x+1)/(1-x)^5")
    cf = closed_form(f)
    ok &= all(eval_closed_form(cf, n) == Fraction(n * n * (n + 1) ** 2, 4) for n in range(101))
    return ok, f"a(n) = {cf}"


def _polygon_counts():
    f = parse_ratfunc("(1+2*x-x^2)/((1-x)^4*(1+x)^2)")
    cf = closed_form(f)

    def formula(n):
        return Fraction(2 * n**3 + 18 * n**2 + 43 * n + 27 - 3 * (n + 1) * (-1) ** n, 24)

    ok = all(eval_closed_form(cf, n) == formula(n) for n in range(51))
    prefix = [formula(n) for n in range(14)]
    guessed = guess_recurrence(prefix, 6)
    ok &= guessed is not None and guessed[1] == f
    return ok, f"a(n) = {cf}"


def _gcd_with_four():
    f = parse_ratfunc("(4+x+2*x^2+x^3)/(1-x^4)")
    cf = closed_form(f)
    ok = [eval_closed_form(cf, n) for n in range(20)] == [4, 1, 2, 1] * 5
    i = FieldElem(0, 1, -1)
    res = {r.root: r.residue for r in root_residues(f)}
    ok &= res == {FieldElem(1): 2, FieldElem(-1): -1, i: i / 2, -i: -i / 2}
    return ok, f"a(n) = {cf}"


def _alternating():
    f1 = RatFunc.geometric(2)
    f2 = monomial_gf(1, 1) + RatFunc.geometric()
    half = Fraction(1, 2)
    # (f1 + f2)/2 + (f1 - f2)/2 * (-1)^n
    f = affine(f1 + f2, half, 0) + scale_arg(affine(f1 - f2, half, 0), -1)
    target = parse_ratfunc("(1+2*x-2*x^2-8*x^3+x^4)/(1-6*x^2+9*x^4-4*x^6)")
    ok = f == target
    merged = interleave([RatFunc.geometric(4), parse_ratfunc("2/(1-x)^2")])
    ok &= merged == target
    rec, offset = gf_to_rec(target)
    ok &= rec.coeffs == (4, 0, -9, 0, 6, 0) and offset.offset == 0
    ok &= multisection(target, 2, 0) == RatFunc.geometric(4)
    ok &= multisection(target, 2, 1) == parse_ratfunc("2/(1-x)^2")
    return ok, f"f(n+6) = 6 f(n+4) - 9 f(n+2) + 4 f(n); F = {target}"


EXAMPLES: list[tuple[str, Callable]] = [
    ("lucas", _lucas),
    ("power-identities", _power_identities),
    ("two-roots", _two_roots),
    ("perrin", _perrin),
    ("fibonacci-trisection", _trisection),
    ("sum-of-cubes", _cubes),
    ("polygon-counts", _polygon_counts),
    ("gcd-with-four", _gcd_with_four),
    ("alternating", _alternating),
]


def run_examples() -> list[tuple[str, bool, str]]:
    """Run every example; a raised exception counts as a failure."""
    out = []
    for name, check in EXAMPLES:
        try:
            ok, detail = check()
        except Exception as exc:  # a crash is a failed check, not a crashed demo
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append((name, bool(ok), detail))
    return out


__all__ = ["EXAMPLES", "PERRIN_TABLE", "run_examples"]

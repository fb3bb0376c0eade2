"""
Perrin numbers: a cubic denominator and certified numeric roots
================================================================

1 - x^2 - x^3 has no rational or quadratic factor, so its roots are
found numerically, each with a proven error radius.
"""

import mpmath

from cfinite import asymptotic, closed_form, eval_closed_form, factor_denominator, parse_ratfunc, verify

f = parse_ratfunc("(3 - x^2)/(1 - x^2 - x^3)")
fl = factor_denominator(f.den)
for root, mult in fl.numeric_roots:
    print(f"root {mpmath.nstr(root.value, 15)}  +- {mpmath.nstr(root.err, 3)}")

cf = closed_form(f, precision=128)
for t in cf.terms:
    print("coefficient", mpmath.nstr(t.coeff.value, 25))

# every term rounds to the right integer
print(" n   a(n)  rho^n")
est = asymptotic(f)
rho = est.growth_modulus.value.real
for n in range(0, 21, 2):
    v = eval_closed_form(cf, n)
    print(f"{n:2d} {int(mpmath.nint(v.value.real)):5d}  {mpmath.nstr(rho**n, 8)}")

report = verify(cf, f, 60)
print("verified on 60 terms:", report.passed, "worst deviation", mpmath.nstr(report.worst_deviation, 3))
print("growth rate (plastic number):", mpmath.nstr(rho, 20))

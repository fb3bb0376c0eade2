"""
Lucas numbers, their generating function and Binet's formula
=============================================================

"""

from cfinite import closed_form, eval_closed_form, gf_to_rec, parse_recurrence, rec_to_gf, terms

# a(n+2) = a(n+1) + a(n) with a(0)=2, a(1)=1
lucas = parse_recurrence("a(n+2)=a(n+1)+a(n); a(0)=2; a(1)=1")
print("terms:", *terms(lucas, 12))

# the generating function: numerator from the initial values, denominator from the coefficients
f = rec_to_gf(lucas)
print("L(x) =", f)

# and back again
rec, offset = gf_to_rec(f)
print("recovered:", rec, "(valid from n =", offset.offset, ")")

# both roots of 1 - x - x^2 are quadratic irrationals, so the closed form stays exact
cf = closed_form(f)
print("a(n) =", cf)
print("a(30) from the closed form:", eval_closed_form(cf, 30))

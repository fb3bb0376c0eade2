"""
Partial sums of cubes, and a recurrence guessed from fourteen terms
====================================================================

"""

from fractions import Fraction

from cfinite import closed_form, eval_closed_form, guess_recurrence, monomial_gf, partial_sum, xd
from cfinite import RatFunc

# n^3 via three applications of x d/dx to 1/(1-x)
cubes = xd(RatFunc.geometric(), 3)
assert cubes == monomial_gf(1, 3)
s = partial_sum(cubes)
print("sum_{k<=n} k^3  <->", s)
cf = closed_form(s)
print("closed form:", cf)
print("n = 10:", eval_closed_form(cf, 10), "=", 10**2 * 11**2 // 4)


# a counting sequence known only by its first terms
def count(n):
    return Fraction(2 * n**3 + 18 * n**2 + 43 * n + 27 - 3 * (n + 1) * (-1) ** n, 24)


prefix = [count(n) for n in range(14)]
print("prefix:", *prefix)
rec, gf = guess_recurrence(prefix, 6)
print("order", rec.order, "recurrence:", rec)
print("generating function:", gf)
print("closed form:", closed_form(gf))

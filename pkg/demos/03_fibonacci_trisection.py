"""
Every third Fibonacci number, halved and shifted
================================================

b(n) = (F(3n+1) - 1)/2 satisfies an inhomogeneous recurrence. We get its
generating function by multisection and an affine map, then read off the
recurrence and an exact closed form over Q(sqrt 5).
"""

from fractions import Fraction

from cfinite import affine, closed_form, homogenize, multisection, parse_ratfunc, parse_recurrence, rec_to_gf, terms

fib = parse_ratfunc("x/(1-x-x^2)")
third = multisection(fib, 3, 1)
print("sum F(3n+1) x^n =", third)

f = affine(third, Fraction(1, 2), Fraction(-1, 2))
print("B(x) =", f)

# the same sequence from its defining recurrence
rec = parse_recurrence("a(n+2)=4*a(n+1)+a(n)+2; a(0)=0; a(1)=1")
assert rec_to_gf(rec) == f
print("terms:", *terms(rec, 10))

# the constant forcing term costs one extra order
print("homogeneous form:", homogenize(rec))

print("b(n) =", closed_form(f))

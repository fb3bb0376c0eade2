"""
Interleaving two sequences
==========================

1, 2, 4, 4, 16, 6, 64, 8, ... alternates 4^n with 2n+2. Merging the two
generating functions gives a denominator in x^2 only, so the recurrence
links terms of equal parity.
"""

from cfinite import affine, gf_to_rec, interleave, monomial_gf, multisection, series_expand
from cfinite import RatFunc

evens = RatFunc.geometric(4)
odds = affine(monomial_gf(1, 1), 2, 2)
f = interleave([evens, odds])
print("F(x) =", f)
print("terms:", *series_expand(f, 12))

rec, _ = gf_to_rec(f)
print("recurrence:", rec)

# multisection undoes the merge
print("even part:", multisection(f, 2, 0))
print("odd part: ", multisection(f, 2, 1))

"""
Carries and the valuation identity
==================================

The p-adic valuation of C(a+b, a) is the number of carries when adding a and
b in base p.  On standard pairs two such carry counts always agree.
"""

from tensorgen import ModuleShape, binomial, carry_count, classify_standard, digits, valuation
from tensorgen.generators import check_valuation_identity, d_formula

# 4 + 4 in base 3 is 11 + 11 = 22: no carry, and indeed 3 does not divide 70
print(digits(4, 3).digits, carry_count(4, 4, 3), valuation(binomial(8, 4), 3))

# det A_k in closed form, and its valuation
shape = ModuleShape(4, 5, 5)
print([d_formula(shape, k) for k in range(5)])

# on a member every k passes, off the set some k fails
for m, n, p in [(4, 5, 3), (3, 3, 3), (7, 8, 5), (5, 5, 5)]:
    flags = [check_valuation_identity(ModuleShape(m, n, p), k) for k in range(m)]
    print((m, n, p), "member" if classify_standard(m, n, p) else "non-member", flags)

"""
Monoid algebras and exact arithmetic
====================================

Elements of R[M] are sparse maps exponent -> coefficient.  Exponents may be
negative (Laurent variables) or fractional (c-divisible monoids).
"""

from fractions import Fraction

from symplex import GF, QQ, Affine, CDivisibleTruncation, FreeMixed, Ring, euclidean_divmod, polynomial_ring, unit_inverse

# Q[x]: the usual polynomial ring
R = polynomial_ring(QQ, 1)
x = R.var(0)
print((1 + x) * (1 - x))

# one polynomial and one Laurent variable over GF(7)
L = Ring(GF(7), FreeMixed((False, True)))
t, y = L.gens()
print(unit_inverse(3 * y))          # 5 y^-1
print(unit_inverse(t))              # None: t is not a unit

# half-integer exponents live in a 2-divisible truncation
H = Ring(QQ, CDivisibleTruncation(Affine(1, ((1,),)), 2, 1))
root = H.monomial((Fraction(1, 2),))
print(root * root)

# division with remainder in one variable over a field
F2 = polynomial_ring(GF(2), 1)
z = F2.var(0)
print(euclidean_divmod(z**2 + 1, z + 1))

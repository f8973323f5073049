"""
Conjugating by delta_I
======================

delta_I is diagonal with t at the positions in I.  Conjugation rescales
entry (i, j) by t, 1/t or 1 depending on which of i, j lie in I.
"""

from symplex import QQ, IndexSet, delta, delta_conjugate, polynomial_ring, se

R = polynomial_ring(QQ, 2)
t, c = R.gens()

# the three cases for se_13(c)
for members in ([1, 4], [2, 3], [1, 3]):
    I = IndexSet.of(2, members)
    out = delta_conjugate(I, se(2, 1, 3, c), t)
    print(members, "->", out.rows[0][2])

# delta itself is not symplectic but t * delta_I^-1 is delta of the paired set
I = IndexSet.of(2, [1, 4])
d, dinv = delta(I, t)
print(d.is_symplectic())
print(dinv.map(lambda r, k, x: x * t.change_ring(d.ring)) == delta(I.sigma(), t)[0])

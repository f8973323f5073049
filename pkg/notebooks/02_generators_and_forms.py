"""
The form psi and its elementary generators
==========================================

psi_n pairs coordinate 2k-1 with 2k.  The generators se, se_diag and sw all
preserve it, which the symplectic certificate confirms exactly.
"""

from symplex import QQ, FreeMixed, Ring, polynomial_ring, psi, scalars, se, se_diag, sw

Q = scalars(QQ)
print(psi(Q, 2))

# se_13(lambda) with a symbolic scalar
P = polynomial_ring(QQ, 1)
lam = P.var(0)
E = se(2, 1, 3, lam)
print(E)
print("symplectic:", E.is_symplectic())

# long root generator
print(se_diag(1, 1, lam))

# sw is a signed permutation matrix when u = 1, and monomial for any unit
print(sw(2, 1, 3, Q.one()))
u = Ring(QQ, FreeMixed((True,))).var(0)
W = sw(2, 1, 3, u)
print("monomial:", W.is_monomial(), "symplectic:", W.is_symplectic())

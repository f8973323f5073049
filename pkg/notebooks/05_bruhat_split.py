"""
Splitting into unipotent, monomial, unipotent
=============================================

Every alpha in Sp_4(GF(5)) factors as beta1 beta2 beta3 with beta2 monomial,
beta1 a word in generators whose first index is odd and beta3 a word whose
first index is even.
"""

from collections import Counter

from symplex import GF, bruhat_decompose, random_word, scalars, word_eval

F = scalars(GF(5))
alpha = word_eval(random_word(2, 12, F, 3))
res = bruhat_decompose(alpha)
b1, b2, b3 = res.matrices()
print(b2)
print("reconstructs:", b1 @ b2 @ b3 == alpha)

# which monomial middle factors occur for a hundred random matrices
cells = Counter()
for s in range(100):
    m = bruhat_decompose(word_eval(random_word(2, 12, F, s))).beta2
    cells[tuple(next(c for c, x in enumerate(row) if x) for row in m.rows)] += 1
for perm, count in cells.most_common():
    print(perm, count)

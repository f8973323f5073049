"""
Writing symplectic matrices as words
====================================

Over a field, a Euclidean ring or a local ring, elimination brings any
symplectic matrix back to the identity.  The inverse operations form a word
in the elementary generators.
"""

from symplex import GF, QQ, ZZ, SympMatrix, factor, local_ring_factor, random_word, scalars, word_eval

# scramble a matrix over GF(7) and recover a word for it
F = scalars(GF(7))
alpha = word_eval(random_word(3, 15, F, seed := 4))
res = factor(alpha)
print(len(res.word), "tokens; residual is identity:", res.ok)
print(word_eval(res.word) == alpha)

# over the integers the pivot is the entry of least absolute value
Z = scalars(ZZ)
beta = word_eval(random_word(2, 8, Z, 1))
print(beta)
print(factor(beta).stats)

# Z localized at 3: the entry 3 is skipped as a pivot
gamma = SympMatrix.from_values(scalars(QQ), [[2, 3], [1, 2]])
print(local_ring_factor(gamma, 3).word.tokens)

"""Hypothesis strategies shared by the test modules."""
from fractions import Fraction

from hypothesis import strategies as st

from symplex.rings import GF, QQ, ZZ, FreeMixed, Ring, scalars
from symplex.symplectic import SE, GenWord, SEDiag, sigma

BASES = [ZZ, QQ, GF(7), GF(2)]


def coefficients(base):
    if base.kind == "Z":
        return st.integers(-20, 20)
    if base.kind == "Q":
        return st.fractions(min_value=-10, max_value=10, max_denominator=6)
    return st.integers(0, base.p - 1)


def elements(ring, max_terms=6, spread=3):
    lau = ring.monoid.laurent
    exps = st.tuples(*[st.integers(-spread, spread) if f else st.integers(0, spread) for f in lau])
    return st.lists(st.tuples(exps, coefficients(ring.base)), max_size=max_terms).map(ring.element)


def mixed_ring(base):
    return Ring(base, FreeMixed((False, True)))


def se_pairs(n):
    return [(i, j) for i in range(1, 2 * n + 1) for j in range(1, 2 * n + 1) if i != j and sigma(i) != j]


@st.composite
def words(draw, n, base, max_len=8, spread=3):
    ring = scalars(base)
    toks = []
    for _ in range(draw(st.integers(0, max_len))):
        lam = ring.constant(draw(coefficients(base) if base.kind == "Fp" else st.integers(-spread, spread)))
        if draw(st.booleans()) and draw(st.booleans()):
            toks.append(SEDiag(draw(st.integers(1, 2 * n)), lam, draw(st.booleans())))
        else:
            i, j = draw(st.sampled_from(se_pairs(n)))
            toks.append(SE(i, j, lam, draw(st.booleans())))
    return GenWord(n, ring, tuple(toks))


def rationals():
    return st.fractions(min_value=-50, max_value=50, max_denominator=12).map(Fraction)

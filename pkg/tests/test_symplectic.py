from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from strategies import se_pairs, words
from symplex.errors import BadIndices, DimensionMismatch, NotUnit
from symplex.factorization import odd_indices
from symplex.rings import GF, QQ, ZZ, FreeMixed, Ring, polynomial_ring, scalars
from symplex.symplectic import (
    SE,
    DeltaConj,
    GenWord,
    IndexSet,
    SEDiag,
    SympMatrix,
    all_index_sets,
    combined_form,
    delta,
    delta_conjugate,
    form,
    phi_q,
    psi,
    random_word,
    se,
    se_diag,
    sigma,
    sp_check,
    subgroup_shape,
    sw,
    sw_with_report,
    tilde,
    transvection_delta,
    transvection_gamma,
    word_eval,
    word_invert,
)


# -- independent oracles: plain nested lists ---------------------------------------


def naive_mul(A, B):
    size = len(A)
    return [[sum((A[r][k] * B[k][c] for k in range(size)), A[0][0] * 0) for c in range(size)] for r in range(size)]


def naive_psi(ring, n):
    one, zero = ring.one(), ring.zero()
    rows = [[zero] * (2 * n) for _ in range(2 * n)]
    for k in range(0, 2 * n, 2):
        rows[k][k + 1] = one
        rows[k + 1][k] = -one
    return rows


def naive_symplectic(M):
    A = [list(r) for r in M.rows]
    At = [list(c) for c in zip(*A)]
    return naive_mul(naive_mul(At, naive_psi(M.ring, M.n)), A) == naive_psi(M.ring, M.n)


def naive_se(ring, n, i, j, lam):
    rows = [[ring.one() if r == c else ring.zero() for c in range(2 * n)] for r in range(2 * n)]
    rows[i - 1][j - 1] = rows[i - 1][j - 1] + lam
    sign = 1 if (i + j) % 2 == 0 else -1
    rows[sigma(j) - 1][sigma(i) - 1] = rows[sigma(j) - 1][sigma(i) - 1] - sign * lam
    return rows


# -- forms ----------------------------------------------------------------------------


def test_sigma_pairs():
    assert [sigma(i) for i in range(1, 7)] == [2, 1, 4, 3, 6, 5]


@pytest.mark.parametrize("n", range(1, 7))
def test_psi_axioms(n):
    R = scalars(ZZ)
    P = psi(R, n)
    assert P.rows == SympMatrix(R, naive_psi(R, n)).rows
    assert P.transpose() == P.map(lambda r, c, x: -x)
    assert (P @ P).map(lambda r, c, x: -x) == SympMatrix.identity(R, n)
    assert sp_check(P)


def test_tilde_of_first_basis_vector():
    R = scalars(QQ)
    assert tilde((R.one(), R.zero())) == (R.zero(), R.one())


def test_sp_check_examples():
    R = scalars(QQ)
    assert sp_check(SympMatrix.from_values(R, [[1, 1], [0, 1]]))
    e13 = SympMatrix.from_values(R, [[1, 0, 1, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    assert not sp_check(e13)


def test_phi_q_examples():
    R = scalars(QQ)
    e1, e2 = (R.one(), R.zero()), (R.zero(), R.one())
    assert phi_q(e2, e1) == 1
    q = (R.constant(3), R.constant(-2), R.constant(5), R.constant(1))
    assert phi_q(q, q) == 0


@given(st.lists(st.integers(-9, 9), min_size=12, max_size=12), st.integers(-5, 5))
def test_phi_q_linear(vals, s):
    R = scalars(QQ)
    c = [R.constant(v) for v in vals]
    q, p1, p2 = c[0:4], c[4:8], c[8:12]
    mixed = [a + s * b for a, b in zip(p1, p2)]
    assert phi_q(q, mixed) == phi_q(q, p1) + s * phi_q(q, p2)


def test_form_length_mismatch():
    R = scalars(QQ)
    with pytest.raises(DimensionMismatch):
        form((R.one(), R.zero()), (R.one(), R.zero(), R.zero(), R.zero()))


# -- generators -----------------------------------------------------------------------


def test_se_symbolic_example():
    R = polynomial_ring(QQ, 1)
    lam = R.var(0)
    M = se(2, 1, 3, lam)
    expected = naive_se(R, 2, 1, 3, lam)
    assert expected[0][2] == lam and expected[3][1] == -lam
    assert M.rows == SympMatrix(R, expected).rows
    assert naive_symplectic(M)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_every_generator_symplectic_symbolically(n):
    R = polynomial_ring(QQ, 2)
    lam, mu = R.gens()
    for i, j in se_pairs(n):
        M = se(n, i, j, lam)
        assert M.rows == SympMatrix(R, naive_se(R, n, i, j, lam)).rows
        assert naive_symplectic(M) and M.is_symplectic()
        assert M @ se(n, i, j, mu) == se(n, i, j, lam + mu)
    for i in range(1, 2 * n + 1):
        assert naive_symplectic(se_diag(n, i, lam))


def test_zero_scalar_gives_identity():
    R = scalars(QQ)
    assert se(2, 1, 3, R.zero()).is_identity()
    assert se_diag(2, 3, R.zero()).is_identity()


def test_se_diag_two_by_two():
    R = polynomial_ring(QQ, 1)
    lam = R.var(0)
    assert se_diag(1, 1, lam).rows == ((R.one(), lam), (R.zero(), R.one()))


def test_se_diag_random_gf5():
    F = scalars(GF(5))
    for a in range(5):
        for i in range(1, 5):
            assert se_diag(2, i, F.constant(a)).is_symplectic()


@pytest.mark.parametrize("bad", [(1, 1), (1, 2), (2, 1), (0, 3), (1, 5)])
def test_se_rejects_bad_indices(bad):
    with pytest.raises(BadIndices):
        se(2, *bad, scalars(QQ).one())


@pytest.mark.parametrize("u", [1, -1, 3])
def test_sw_is_monomial_symplectic(u):
    R = scalars(QQ)
    for i, j in se_pairs(2):
        M, fault = sw_with_report(2, i, j, R.constant(u))
        assert not fault
        assert M.is_monomial() and naive_symplectic(M)
        if u in (1, -1):
            assert all(x in (0, 1, -1) for row in M.rows for x in row)


def test_sw_over_laurent_unit():
    L = Ring(QQ, FreeMixed((True,)))
    u = L.var(0)
    for n in (2, 3):
        for i, j in se_pairs(n):
            M = sw(n, i, j, u)
            assert M.is_monomial() and naive_symplectic(M)


def test_sw_needs_a_unit():
    t = polynomial_ring(QQ, 1).var(0)
    with pytest.raises(NotUnit):
        sw(2, 1, 3, t)


def test_symplectic_inverse():
    w = random_word(3, 10, scalars(ZZ), 5)
    M = word_eval(w)
    assert M.symplectic_inverse() @ M == SympMatrix.identity(M.ring, 3)


# -- index sets and delta ------------------------------------------------------------


def test_index_set_validation():
    assert IndexSet.of(2, [1, 4]).sigma().sorted() == [2, 3]
    with pytest.raises(BadIndices):
        IndexSet.of(2, [1, 2])
    with pytest.raises(BadIndices):
        IndexSet.of(2, [1])
    assert len(all_index_sets(3)) == 8


def test_delta_example():
    R = polynomial_ring(QQ, 1)
    t = R.var(0)
    d, dinv = delta(IndexSet.of(2, [2, 4]), t)
    L = d.ring
    tl = t.change_ring(L)
    assert [d.rows[k][k] for k in range(4)] == [1, tl, 1, tl]
    assert d @ dinv == SympMatrix.identity(L, 2)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_delta_identities(n):
    R = polynomial_ring(QQ, 1)
    t = R.var(0)
    for I in all_index_sets(n):
        d, dinv = delta(I, t)
        ds, _ = delta(I.sigma(), t)
        tl = t.change_ring(d.ring)
        assert dinv.map(lambda r, c, x: tl * x) == ds
        P = psi(d.ring, n)
        assert P @ ds == d @ P


def test_conjugating_identity():
    R = polynomial_ring(QQ, 1)
    t = R.var(0)
    for I in all_index_sets(2):
        out = delta_conjugate(I, SympMatrix.identity(R, 2), t)
        assert out.is_identity()


@pytest.mark.parametrize(
    "members, power",
    [([1, 4], 1), ([2, 3], -1), ([1, 3], 0), ([2, 4], 0)],
)
def test_conjugation_table(members, power):
    R = polynomial_ring(QQ, 2)
    t, c = R.gens()
    I = IndexSet.of(2, members)
    out = delta_conjugate(I, se(2, 1, 3, c), t)
    L = out.ring
    tl, cl = t.change_ring(L), c.change_ring(L)
    scale = {1: tl, -1: tl ** -1, 0: L.one()}[power]
    assert out == se(2, 1, 3, scale * cl)


@given(data=st.data())
def test_conjugation_pattern_matches_literal_product(data):
    R = polynomial_ring(QQ, 1)
    t = R.var(0)
    w = data.draw(words(2, ZZ, max_len=5))
    alpha = word_eval(GenWord(2, R, tuple(type(k)(*(_lift(f, R, t) for f in _fields(k))) for k in w.tokens)))
    for I in all_index_sets(2):
        for direction in (1, -1):
            d, dinv = delta(I, t)
            lit = d @ alpha.change_ring(d.ring) @ dinv if direction == 1 else dinv @ alpha.change_ring(d.ring) @ d
            assert delta_conjugate(I, alpha, t, direction, verify=False) == lit


def _fields(tok):
    if isinstance(tok, SE):
        return (tok.i, tok.j, tok.lam, tok.inverse)
    return (tok.i, tok.lam, tok.inverse)


def _lift(x, R, t):
    # scalars become multiples of t, so the word is congruent to Id mod t
    if hasattr(x, "ring"):
        return t * x.constant_value()
    return x


# -- words -----------------------------------------------------------------------------


def test_empty_word_is_identity():
    R = scalars(QQ)
    assert word_eval(GenWord(2, R, ())) == SympMatrix.identity(R, 2)


def test_single_token_word():
    R = polynomial_ring(QQ, 1)
    lam = R.var(0)
    assert word_eval(GenWord(2, R, (SE(1, 3, lam),))) == se(2, 1, 3, lam)
    assert word_eval(GenWord(2, R, (SEDiag(2, lam),))) == se_diag(2, 2, lam)


def test_delta_token_evaluates():
    R = polynomial_ring(QQ, 1)
    t = R.var(0)
    I = IndexSet.of(2, [1, 4])
    w = GenWord(2, R, (DeltaConj(I, t, 1), SE(1, 3, R.one())))
    d, _ = delta(I, t)
    assert word_eval(w) == d @ se(2, 1, 3, R.one()).change_ring(d.ring)


@pytest.mark.parametrize("base", [ZZ, GF(7)], ids=lambda b: b.name)
@given(data=st.data())
def test_word_times_inverse(base, data):
    w = data.draw(words(2, base))
    M = word_eval(w)
    assert naive_symplectic(M)
    assert M @ word_eval(word_invert(w)) == SympMatrix.identity(M.ring, 2)
    inv = [list(r) for r in word_eval(word_invert(w)).rows]
    assert SympMatrix(M.ring, naive_mul([list(r) for r in M.rows], inv)).is_identity()


def test_word_evaluation_matches_matrix_product():
    w = random_word(3, 12, scalars(GF(7)), 3)
    acc = SympMatrix.identity(w.ring, 3)
    for tok in w.tokens:
        acc = acc @ tok.matrix(3)
    assert acc == word_eval(w)


def test_random_word_deterministic():
    R = scalars(GF(7))
    assert random_word(2, 9, R, 11) == random_word(2, 9, R, 11)
    assert random_word(2, 0, R, 11).tokens == ()


def test_word_rejects_bad_tokens():
    R = scalars(QQ)
    with pytest.raises(BadIndices):
        GenWord(2, R, (SE(1, 2, R.one()),))
    with pytest.raises(BadIndices):
        GenWord(1, R, (SEDiag(3, R.one()),))


# -- subgroup shapes -------------------------------------------------------------------


def test_diagonal_shape():
    L = Ring(QQ, FreeMixed((True, True)))
    a, b = L.gens()
    vals = [a, a**-1, b, b**-1]
    D = SympMatrix(L, [[vals[r] if r == c else L.zero() for c in range(4)] for r in range(4)])
    assert subgroup_shape(D, "sD")
    assert not subgroup_shape(se(2, 1, 3, L.one()), "sD")


def test_weyl_shape():
    R = scalars(QQ)
    assert subgroup_shape(sw(2, 1, 3, R.one()), "sW")
    assert not subgroup_shape(se(2, 1, 3, R.one()), "sW")


def test_generator_in_its_subgroup():
    R = polynomial_ring(QQ, 1)
    t = R.var(0)
    in_ideal = lambda x: all(e[0] >= 1 for e, _ in x.terms)  # noqa: E731
    assert subgroup_shape(se(2, 1, 3, t), "sI", IndexSet.of(2, [1, 3]), in_ideal)
    assert subgroup_shape(se(2, 1, 3, t), "sI", IndexSet.of(2, [1, 4]), in_ideal)
    assert not subgroup_shape(se(2, 1, 3, R.one()), "sI", IndexSet.of(2, [1, 3]), in_ideal)
    assert not subgroup_shape(se(2, 1, 3, t), "sI", IndexSet.of(2, [2, 3]), in_ideal)


def test_unipotent_product_in_subgroup():
    R = scalars(GF(5))
    I = odd_indices(2)
    alpha = se(2, 1, 3, R.constant(2)) @ se(2, 1, 4, R.constant(3)) @ se_diag(2, 1, R.one())
    assert subgroup_shape(alpha, "sI", I)
    assert not subgroup_shape(alpha.transpose(), "sI", I)


# -- transvections -----------------------------------------------------------------------


def _vec(R, vals):
    return tuple(R.constant(v) for v in vals)


def test_transvection_with_zero_q():
    R = scalars(QQ)
    p, a, b = _vec(R, [1, 2, 3, 4]), R.constant(5), R.constant(7)
    zero = _vec(R, [0, 0, 0, 0])
    # the +b / -a terms survive q = 0, so the map shears (a, b)
    assert transvection_delta(zero, p, a, b) == (p, a + b, b)
    assert transvection_gamma(zero, p, a, b) == (p, a, b - a)


def test_delta_with_b_zero():
    R = scalars(QQ)
    q, p, a = _vec(R, [1, -1, 2, 0]), _vec(R, [3, 1, 0, 5]), R.constant(4)
    p2, a2, b2 = transvection_delta(q, p, a, R.zero())
    assert p2 == p and a2 == a - form(p, q) and b2 == 0


def test_transvections_preserve_form_symbolically():
    R = polynomial_ring(QQ, 16)
    g = R.gens()
    q, p, a, b, p2, a2, b2 = g[0:4], g[4:8], g[8], g[9], g[10:14], g[14], g[15]
    v, w = (p, a, b), (p2, a2, b2)
    for T in (transvection_delta, transvection_gamma):
        assert combined_form(T(q, *v), T(q, *w)) == combined_form(v, w)


@given(st.lists(st.integers(0, 10), min_size=16, max_size=16))
def test_transvections_preserve_form_gf11(vals):
    R = scalars(GF(11))
    c = [R.constant(x) for x in vals]
    q, v, w = c[0:4], (c[4:8], c[8], c[9]), (c[10:14], c[14], c[15])
    for T in (transvection_delta, transvection_gamma):
        assert combined_form(T(q, *v), T(q, *w)) == combined_form(v, w)


def test_transvection_dimension_mismatch():
    R = scalars(QQ)
    with pytest.raises(DimensionMismatch):
        transvection_delta(_vec(R, [1, 0]), _vec(R, [1, 0, 0, 0]), R.one(), R.one())


def test_fraction_scalars_survive():
    R = scalars(QQ)
    M = se(2, 1, 3, R.constant(Fraction(2, 3)))
    assert M.rows[0][2] == Fraction(2, 3)


def test_random_word_in_rank_one():
    w = random_word(1, 8, scalars(GF(7)), 2)
    assert len(w) == 8 and all(isinstance(t, SEDiag) for t in w.tokens)

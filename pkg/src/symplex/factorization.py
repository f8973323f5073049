"""Constructive Sp = ESp: elementary-generator words for symplectic matrices.

All routes share one elimination loop.  The active block is the leading
2K x 2K corner, K = n..1.  Its last column is driven to e_{2K} with SE /
SEDiag row operations, the paired column 2K-1 is then forced to e_{2K-1},
and symplecticity leaves the two corresponding rows as unit rows, so the
loop recurses on the 2(K-1) corner.  If E_m ... E_1 alpha = Id, the word
returned is E_1^{-1} ... E_m^{-1}.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .errors import DecompositionFailed, NotAField, NotEuclidean, NotSymplectic
from .rings import RingElement, euclidean_divmod, euclidean_norm, unit_inverse
from .symplectic import (
    SE,
    GenWord,
    IndexSet,
    SEDiag,
    SympMatrix,
    _freeze,
    apply_token_left,
    match_generator,
    sigma,
    word_eval,
)


@dataclass(frozen=True)
class FactorizationResult:
    word: GenWord
    residual: SympMatrix
    stats: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.residual.is_identity()


class _Eliminator:
    """Mutable row state plus the log of applied operations."""

    def __init__(self, alpha: SympMatrix, on_step: Callable[[SympMatrix], None] | None):
        self.n = alpha.n
        self.ring = alpha.ring
        self.rows = [list(r) for r in alpha.rows]
        self.applied: list = []
        self.pivot_steps = 0
        self.on_step = on_step

    def op(self, tok):
        if not tok.lam:
            return
        apply_token_left(self.rows, tok, self.n)
        self.applied.append(tok)
        if self.on_step is not None:
            self.on_step(self.snapshot())

    def snapshot(self) -> SympMatrix:
        return SympMatrix._trusted(self.ring, _freeze(self.rows), self.n)

    def col(self, c: int, top: int) -> list[RingElement]:
        """1-based column c restricted to rows 1..top."""
        return [self.rows[r][c - 1] for r in range(top)]

    def result(self) -> FactorizationResult:
        toks = []
        for tok in self.applied:
            if isinstance(tok, SE):
                toks.append(SE(tok.i, tok.j, -tok.lam))
            else:
                toks.append(SEDiag(tok.i, -tok.lam))
        word = GenWord(self.n, self.ring, tuple(toks))
        return FactorizationResult(
            word,
            self.snapshot(),
            {"token_count": len(toks), "pivot_steps": self.pivot_steps},
        )

    # ---- shared moves -------------------------------------------------

    def clear_against(self, k: int, top: int, quotient: Callable[[RingElement, RingElement], RingElement]):
        """Reduce every entry of column ``top`` against the pivot in row k.

        Row sigma(k) goes last: the SE moves on other rows touch it.
        """
        pk = self.rows[k - 1][top - 1]
        for j in range(1, top + 1):
            if j in (k, sigma(k)):
                continue
            cj = self.rows[j - 1][top - 1]
            if cj:
                self.op(SE(j, k, -quotient(cj, pk)))
        cs = self.rows[sigma(k) - 1][top - 1]
        if cs:
            self.op(SEDiag(sigma(k), -quotient(cs, pk)))

    def move_unit_pivot(self, k: int, top: int):
        """Column ``top`` is u e_k with u a unit; turn it into e_top."""
        u = self.rows[k - 1][top - 1]
        uinv = unit_inverse(u)
        one = self.ring.one()
        if k == top:
            if u == 1:
                return
            # (0, u) -> (1, u) -> (1, 1) -> (0, 1) on the pair (top-1, top)
            self.op(SEDiag(top - 1, uinv))
            self.op(SEDiag(top, one - u))
            self.op(SEDiag(top - 1, -one))
        elif k == top - 1:
            self.op(SEDiag(top, uinv))
            self.op(SEDiag(top - 1, -u))
        else:
            self.op(SE(top, k, uinv))
            self.op(SE(k, top, -u))

    def finish_block(self, top: int):
        """Column ``top`` is e_top; clear the paired column top-1 to e_{top-1}."""
        for j in range(1, top - 1):
            cj = self.rows[j - 1][top - 2]
            if cj:
                self.op(SE(j, top - 1, -cj))
        ct = self.rows[top - 1][top - 2]
        if ct:
            self.op(SEDiag(top, -ct))


def _require_symplectic(alpha: SympMatrix):
    if not alpha.is_symplectic():
        raise NotSymplectic("input fails alpha^T psi alpha = psi")


def _unit_pivot_route(alpha: SympMatrix, is_local_unit, on_step) -> FactorizationResult:
    el = _Eliminator(alpha, on_step)

    def quotient(a, b):
        return a * unit_inverse(b)

    for K in range(el.n, 0, -1):
        top = 2 * K
        col = el.col(top, top)
        k = next((r + 1 for r, x in enumerate(col) if x and is_local_unit(x)), None)
        if k is None:
            raise NotSymplectic(f"column {top} of the active block has no unit entry")
        el.pivot_steps += 1
        el.clear_against(k, top, quotient)
        el.move_unit_pivot(k, top)
        el.finish_block(top)
    return el.result()


def factor_over_field(alpha: SympMatrix, on_step=None) -> FactorizationResult:
    """Symplectic Gaussian elimination over Q or GF(p) scalars.

    The pivot is the smallest row index with a nonzero entry in the active
    column.  ``on_step`` is called with every intermediate matrix.
    """
    ring = alpha.ring
    if ring.rank != 0 or not ring.base.is_field:
        raise NotAField(f"{ring} is not a field")
    _require_symplectic(alpha)
    return _unit_pivot_route(alpha, lambda x: True, on_step)


def local_ring_factor(alpha: SympMatrix, p: int, on_step=None) -> FactorizationResult:
    """Factor over Z localized at p, modelled as rationals with p-free denominators."""
    ring = alpha.ring
    if ring.rank != 0 or ring.base.kind != "Q":
        raise NotAField("local_ring_factor works on rational scalar matrices")
    for row in alpha.rows:
        for x in row:
            if x and Fraction(x.constant_value()).denominator % p == 0:
                raise ValueError(f"entry {x!r} does not lie in Z_({p})")
    _require_symplectic(alpha)

    def is_local_unit(x):
        v = Fraction(x.constant_value())
        return v.numerator % p != 0

    return _unit_pivot_route(alpha, is_local_unit, on_step)


def factor_over_euclidean(alpha: SympMatrix, on_step=None, max_rounds: int = 10_000) -> FactorizationResult:
    """gcd descent on the active column over Z or k[x].

    Each round picks the nonzero entry of least norm (ties: smallest row)
    and reduces every other entry modulo it; norms strictly drop, so the
    column ends as a unit multiple of one basis vector.
    """
    ring = alpha.ring
    try:
        euclidean_norm(ring.zero())
    except NotEuclidean:
        raise
    _require_symplectic(alpha)
    el = _Eliminator(alpha, on_step)

    def quotient(a, b):
        return euclidean_divmod(a, b)[0]

    for K in range(el.n, 0, -1):
        top = 2 * K
        for _ in range(max_rounds):
            col = el.col(top, top)
            live = [(euclidean_norm(x), r + 1) for r, x in enumerate(col) if x]
            if not live:
                raise NotSymplectic(f"column {top} of the active block vanished")
            _, k = min(live)
            el.pivot_steps += 1
            if len(live) == 1 and unit_inverse(col[k - 1]) is not None:
                break
            before = len(el.applied)
            el.clear_against(k, top, quotient)
            if len(el.applied) == before:
                raise NotSymplectic(f"column {top} is not unimodular")
        else:
            raise NotSymplectic("gcd descent did not terminate")
        el.move_unit_pivot(k, top)
        el.finish_block(top)
    return el.result()


def factor(alpha: SympMatrix, local_prime: int | None = None, on_step=None) -> FactorizationResult:
    """Pick the route by ring: local ring, field, else Euclidean."""
    if local_prime is not None:
        return local_ring_factor(alpha, local_prime, on_step)
    ring = alpha.ring
    if ring.rank == 0 and ring.base.is_field:
        return factor_over_field(alpha, on_step)
    return factor_over_euclidean(alpha, on_step)


# --------------------------------------------------------------------------
# sI . sW . sJ splitting


def odd_indices(n: int) -> IndexSet:
    return IndexSet(n, frozenset(range(1, 2 * n, 2)))


def even_indices(n: int) -> IndexSet:
    return IndexSet(n, frozenset(range(2, 2 * n + 1, 2)))


def adapted_order(I: IndexSet) -> list[int]:
    """i_1 < ... < i_n followed by sigma(i_n), ..., sigma(i_1).

    In this order psi is anti-diagonal, so upper triangular symplectic
    matrices form a Borel subgroup.
    """
    first = I.sorted()
    return first + [sigma(i) for i in reversed(first)]


@dataclass(frozen=True)
class BruhatResult:
    beta1: GenWord
    beta2: SympMatrix
    beta3: GenWord

    def matrices(self) -> tuple[SympMatrix, SympMatrix, SympMatrix]:
        return word_eval(self.beta1), self.beta2, word_eval(self.beta3)


def _is_unitriangular(alpha: SympMatrix, order: list[int]) -> bool:
    pos = {idx: a for a, idx in enumerate(order)}
    for r, row in enumerate(alpha.rows):
        for c, x in enumerate(row):
            pr, pc = pos[r + 1], pos[c + 1]
            if pr == pc and x != 1:
                return False
            if pr > pc and x:
                return False
    return True


def _long_root_tokens(n: int, i: int, k: int, c: RingElement, two_inv: RingElement | None):
    """Tokens evaluating to Id + c e_{i sigma(i)} using only first indices in I.

    [se_ik(1), se_{k sigma(i)}(b)] = Id + 2b e_{i sigma(i)} for i != k, so
    b = c/2.  Falls back to a single long-root token when 2 is not a unit
    or no partner index exists.
    """
    if k is None or two_inv is None:
        return [SEDiag(i, c)]
    one = c.ring.one()
    b = c * two_inv
    return [SE(i, k, one), SE(k, sigma(i), b), SE(i, k, -one), SE(k, sigma(i), -b)]


def factor_unipotent(u: SympMatrix, I: IndexSet) -> GenWord:
    """Word in generators with first index in I for u upper unitriangular in I's order."""
    if u.n != I.n:
        raise DecompositionFailed("index set size differs from matrix size")
    order = adapted_order(I)
    if not _is_unitriangular(u, order):
        raise DecompositionFailed("matrix is not unitriangular in the adapted order")
    if not u.is_symplectic():
        raise DecompositionFailed("unitriangular factor is not symplectic")
    n = u.n
    ring = u.ring
    first = order[:n]
    rows = [list(r) for r in u.rows]
    out: list = []  # tokens of the word, i.e. inverses of the applied row operations

    def apply(tok):
        apply_token_left(rows, tok, n)

    # Levi block: entries (i_a, i_b), a < b, cleared column by column
    for b in range(n):
        for a in range(b):
            x = rows[first[a] - 1][first[b] - 1]
            if x:
                apply(SE(first[a], first[b], -x))
                out.append(SE(first[a], first[b], x))
    # radical block: (i_a, sigma(i_b)), a < b; symmetry clears (i_b, sigma(i_a))
    for a in range(n):
        for b in range(a + 1, n):
            i, j = first[a], sigma(first[b])
            x = rows[i - 1][j - 1]
            if x:
                apply(SE(i, j, -x))
                out.append(SE(i, j, x))
    two_inv = unit_inverse(ring.constant(2))
    for a in range(n):
        i = first[a]
        x = rows[i - 1][sigma(i) - 1]
        if x:
            apply(SEDiag(i, -x))
            partner = first[(a + 1) % n] if n > 1 else None
            out.extend(_long_root_tokens(n, i, partner, x, two_inv))
    rest = SympMatrix._trusted(ring, _freeze(rows), n)
    if not rest.is_identity():
        raise DecompositionFailed("unipotent factoring left a non-identity remainder")
    word = GenWord(n, ring, tuple(out))
    if word_eval(word) != u:
        raise DecompositionFailed("unipotent word does not evaluate to its input")
    return word


def bruhat_decompose(alpha: SympMatrix, I: IndexSet | None = None, J: IndexSet | None = None) -> BruhatResult:
    """alpha = beta1 beta2 beta3 with beta1 in <sI>, beta2 monomial, beta3 in <sJ>.

    Rows are read in I's adapted order and columns in J's.  Column by
    column, the pivot is the lowest unpivoted nonzero row; rows above it
    are cleared with row operations and the pivot row is cleared to the
    right with column operations.  This yields the unique normal form
    u1 m u2 with u1 in U_I and m^{-1} u1 m lower triangular; applying
    alpha -> psi^{-1} alpha^{-T} psi fixes alpha and permutes normal forms,
    so all three factors are symplectic.
    """
    ring = alpha.ring
    n = alpha.n
    if ring.rank != 0 or not ring.base.is_field:
        raise NotAField(f"{ring} is not a field")
    _require_symplectic(alpha)
    I = I or odd_indices(n)
    J = J or even_indices(n)
    empty_I, empty_J = GenWord(n, ring), GenWord(n, ring)

    if alpha.is_monomial():
        return BruhatResult(empty_I, alpha, empty_J)
    tok = match_generator(alpha)
    if isinstance(tok, SE) and {tok.i, sigma(tok.j)} & I.members:
        i, j = (tok.i, tok.j) if tok.i in I else (sigma(tok.j), sigma(tok.i))
        lam = tok.lam if tok.i in I else (-tok.lam if (i + j) % 2 == 0 else tok.lam)
        return BruhatResult(GenWord(n, ring, (SE(i, j, lam),)), SympMatrix.identity(ring, n), empty_J)
    if _is_unitriangular(alpha, adapted_order(I)):
        return BruhatResult(factor_unipotent(alpha, I), SympMatrix.identity(ring, n), empty_J)
    if _is_unitriangular(alpha, adapted_order(J)):
        return BruhatResult(empty_I, SympMatrix.identity(ring, n), factor_unipotent(alpha, J))

    rord, cord = adapted_order(I), adapted_order(J)
    size = 2 * n
    # permuted working copy: W[a][b] = alpha[rord[a]][cord[b]]
    W = [[alpha.rows[rord[a] - 1][cord[b] - 1] for b in range(size)] for a in range(size)]
    zero, one = ring.zero(), ring.one()
    U1 = [[one if a == b else zero for b in range(size)] for a in range(size)]  # accumulates row-op inverses
    U2 = [[one if a == b else zero for b in range(size)] for a in range(size)]  # accumulates column-op inverses
    pivoted: set[int] = set()
    for c in range(size):
        r = next((a for a in range(size - 1, -1, -1) if a not in pivoted and W[a][c]), None)
        if r is None:
            raise DecompositionFailed("singular column during elimination", pivot=(c, None))
        pivoted.add(r)
        inv = unit_inverse(W[r][c])
        for a in range(r):
            x = W[a][c]
            if x:
                lam = x * inv
                W[a] = [p - lam * q for p, q in zip(W[a], W[r])]
                # U1 <- U1 (Id + lam e_{a r})
                for row in U1:
                    if row[a]:
                        row[r] = row[r] + row[a] * lam
        for d in range(c + 1, size):
            x = W[r][d]
            if x:
                lam = x * inv
                for row in W:
                    if row[c]:
                        row[d] = row[d] - lam * row[c]
                # U2 <- (Id + lam e_{c d}) U2
                U2[c] = [p + lam * q for p, q in zip(U2[c], U2[d])]

    def unpermute(M, rorder, corder):
        out = [[zero] * size for _ in range(size)]
        for a in range(size):
            for b in range(size):
                out[rorder[a] - 1][corder[b] - 1] = M[a][b]
        return SympMatrix._trusted(ring, _freeze(out), n)

    u1 = unpermute(U1, rord, rord)
    m = unpermute(W, rord, cord)
    u2 = unpermute(U2, cord, cord)
    for name, mat in (("u1", u1), ("m", m), ("u2", u2)):
        if not mat.is_symplectic():
            raise DecompositionFailed(f"normal-form factor {name} is not symplectic", pivot=sorted(pivoted))
    if not m.is_monomial():
        raise DecompositionFailed("middle factor is not monomial", pivot=sorted(pivoted))
    return BruhatResult(factor_unipotent(u1, I), m, factor_unipotent(u2, J))

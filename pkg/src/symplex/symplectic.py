"""Symplectic matrices over monoid algebras and their elementary generators.

Index conventions follow the mathematics: generator and index-set APIs take
1-based indices in ``1..2n``; ``SympMatrix.rows`` is an ordinary 0-based
nested tuple.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable, Sequence

from .errors import BadIndices, DimensionMismatch, NotMonomial, NotUnit, SignConventionFault
from .prng import SplitMix64
from .rings import Ring, RingElement, unit_inverse


def sigma(i: int) -> int:
    """The pair swap 2k-1 <-> 2k on 1-based indices."""
    return i + 1 if i % 2 else i - 1


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


# --------------------------------------------------------------------------
# matrices


class SympMatrix:
    """2n x 2n matrix with a lazily computed symplectic certificate.

    The certificate is computed at most once per instance; concurrent readers
    may both compute it, but always agree on the value.
    """

    __slots__ = ("ring", "n", "rows", "_certificate")

    def __init__(self, ring: Ring, rows: Sequence[Sequence[RingElement]]):
        rows = tuple(tuple(r) for r in rows)
        size = len(rows)
        if size % 2 or any(len(r) != size for r in rows):
            raise DimensionMismatch(f"expected an even square matrix, got {size} rows")
        for r in rows:
            for x in r:
                if x.ring != ring:
                    raise DimensionMismatch("matrix entry outside the declared ring")
        self.ring = ring
        self.n = size // 2
        self.rows = rows
        self._certificate = None

    @classmethod
    def _trusted(cls, ring, rows, n):
        m = object.__new__(cls)
        m.ring = ring
        m.n = n
        m.rows = rows
        m._certificate = None
        return m

    @classmethod
    def identity(cls, ring: Ring, n: int) -> "SympMatrix":
        one, zero = ring.one(), ring.zero()
        rows = tuple(tuple(one if r == c else zero for c in range(2 * n)) for r in range(2 * n))
        m = cls._trusted(ring, rows, n)
        m._certificate = True
        return m

    @classmethod
    def from_values(cls, ring: Ring, values) -> "SympMatrix":
        """Matrix from nested base-ring scalars or ring elements."""
        return cls(ring, [[x if isinstance(x, RingElement) else ring.constant(x) for x in row] for row in values])

    @property
    def size(self) -> int:
        return 2 * self.n

    def column(self, c: int) -> tuple[RingElement, ...]:
        return tuple(r[c] for r in self.rows)

    def transpose(self) -> "SympMatrix":
        return SympMatrix._trusted(self.ring, tuple(zip(*self.rows)), self.n)

    def __matmul__(self, other: "SympMatrix") -> "SympMatrix":
        if other.n != self.n:
            raise DimensionMismatch("matrix sizes differ")
        if other.ring != self.ring:
            from .errors import MixedRing

            raise MixedRing(f"{self.ring} vs {other.ring}")
        size = self.size
        zero = self.ring.zero()
        cols = [other.column(c) for c in range(size)]
        out = []
        for row in self.rows:
            nz = [(k, a) for k, a in enumerate(row) if a]
            new = []
            for col in cols:
                acc = zero
                for k, a in nz:
                    b = col[k]
                    if b:
                        acc = acc + a * b
                new.append(acc)
            out.append(tuple(new))
        return SympMatrix._trusted(self.ring, tuple(out), self.n)

    def __eq__(self, other):
        if not isinstance(other, SympMatrix):
            return NotImplemented
        return self.n == other.n and self.ring == other.ring and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        body = "\n".join("  [" + ", ".join(repr(x) for x in r) + "]" for r in self.rows)
        return f"SympMatrix(n={self.n},\n{body})"

    def map(self, fn: Callable[[int, int, RingElement], RingElement], ring: Ring | None = None) -> "SympMatrix":
        ring = ring or self.ring
        rows = tuple(tuple(fn(r, c, x) for c, x in enumerate(row)) for r, row in enumerate(self.rows))
        return SympMatrix._trusted(ring, rows, self.n)

    def change_ring(self, ring: Ring) -> "SympMatrix":
        if ring == self.ring:
            return self
        return self.map(lambda r, c, x: x.change_ring(ring), ring)

    def is_identity(self) -> bool:
        return all((x == 1) if r == c else not x for r, row in enumerate(self.rows) for c, x in enumerate(row))

    def is_diagonal(self) -> bool:
        return all(not x for r, row in enumerate(self.rows) for c, x in enumerate(row) if r != c)

    def is_monomial(self) -> bool:
        """Exactly one nonzero entry in every row and every column."""
        if any(sum(1 for x in row if x) != 1 for row in self.rows):
            return False
        return all(sum(1 for row in self.rows if row[c]) == 1 for c in range(self.size))

    def is_symplectic(self) -> bool:
        if self._certificate is None:
            self._certificate = _gram_is_psi(self)
        return self._certificate

    def symplectic_inverse(self) -> "SympMatrix":
        """alpha^{-1} = -psi alpha^T psi, valid for symplectic alpha."""
        n = self.n
        rows = self.rows
        out = []
        for r in range(2 * n):
            sr = sigma(r + 1) - 1
            new = []
            for c in range(2 * n):
                sc = sigma(c + 1) - 1
                # (-psi A^T psi)[r][c] = s_r s_c A[sc][sr], s_k = psi[k][sigma(k)]
                x = rows[sc][sr]
                new.append(x if _sign(r + 1) == _sign(c + 1) else -x)
            out.append(tuple(new))
        return SympMatrix._trusted(self.ring, tuple(out), n)


def psi(ring: Ring, n: int) -> SympMatrix:
    """Standard alternating form psi_n = psi_1 ⊥ ... ⊥ psi_1."""
    one, zero = ring.one(), ring.zero()
    rows = []
    for r in range(1, 2 * n + 1):
        row = []
        for c in range(1, 2 * n + 1):
            if c == sigma(r):
                row.append(one if r % 2 else -one)
            else:
                row.append(zero)
        rows.append(tuple(row))
    return SympMatrix._trusted(ring, tuple(rows), n)


def tilde(u: Sequence[RingElement]) -> tuple[RingElement, ...]:
    """Row vector u^T psi_n."""
    if len(u) % 2:
        raise DimensionMismatch("tilde needs an even-length vector")
    out = []
    for k in range(0, len(u), 2):
        out.append(-u[k + 1])
        out.append(u[k])
    return tuple(out)


def form(u: Sequence[RingElement], v: Sequence[RingElement]) -> RingElement:
    """<u, v> = u^T psi_n v."""
    if len(u) != len(v):
        raise DimensionMismatch("form arguments differ in length")
    tu = tilde(u)
    acc = None
    for a, b in zip(tu, v):
        if a and b:
            acc = a * b if acc is None else acc + a * b
    if acc is None:
        ring = (u[0] if u else v[0]).ring
        return ring.zero()
    return acc


def _gram_is_psi(alpha: SympMatrix) -> bool:
    size = alpha.size
    cols = [alpha.column(c) for c in range(size)]
    for a in range(size):
        ta = tilde(cols[a])
        for b in range(a, size):
            val = form_with_tilde(ta, cols[b])
            if b == sigma(a + 1) - 1:
                want = 1 if a % 2 == 0 else -1
                if val != want:
                    return False
            elif val:
                return False
    return True


def form_with_tilde(tu, v) -> RingElement | int:
    acc = 0
    for a, b in zip(tu, v):
        if a and b:
            acc = a * b + acc
    return acc


def sp_check(alpha: SympMatrix) -> bool:
    return alpha.is_symplectic()


# --------------------------------------------------------------------------
# index sets and delta matrices


@dataclass(frozen=True)
class IndexSet:
    """I subset {1..2n} holding exactly one index of every pair {2k-1, 2k}."""

    n: int
    members: frozenset

    def __post_init__(self):
        members = frozenset(int(i) for i in self.members)
        object.__setattr__(self, "members", members)
        if any(not 1 <= i <= 2 * self.n for i in members):
            raise BadIndices(f"index set {sorted(members)} leaves 1..{2 * self.n}")
        for k in range(1, self.n + 1):
            if (2 * k - 1 in members) == (2 * k in members):
                raise BadIndices(f"index set {sorted(members)} must hold exactly one of {2 * k - 1}, {2 * k}")

    @classmethod
    def of(cls, n: int, members) -> "IndexSet":
        return cls(n, frozenset(members))

    def __contains__(self, i):
        return i in self.members

    def sigma(self) -> "IndexSet":
        """sigma(I), the complement of I in {1..2n}."""
        return IndexSet(self.n, frozenset(range(1, 2 * self.n + 1)) - self.members)

    def sorted(self) -> list[int]:
        return sorted(self.members)

    def __repr__(self):
        return f"I{self.sorted()}"


def all_index_sets(n: int) -> list[IndexSet]:
    out = []
    for choice in product((0, 1), repeat=n):
        out.append(IndexSet(n, frozenset(2 * k + 1 + b for k, b in enumerate(choice))))
    return out


def _laurent_pair(t: RingElement) -> tuple[Ring, RingElement, RingElement]:
    if not t.is_monomial():
        raise NotMonomial(f"{t!r} is not a nonzero monomial")
    ring = t.ring if unit_inverse(t) is not None else t.ring.localize(t)
    tl = t.change_ring(ring)
    inv = unit_inverse(tl)
    if inv is None:
        raise NotUnit(f"{t!r} stays a non-unit after localization (coefficient not invertible)")
    return ring, tl, inv


def delta(I: IndexSet, t: RingElement) -> tuple[SympMatrix, SympMatrix]:
    """(delta_I, delta_I^{-1}), both over the ring with t inverted."""
    ring, tl, inv = _laurent_pair(t)
    one, zero = ring.one(), ring.zero()
    size = 2 * I.n

    def diag(val):
        return SympMatrix._trusted(
            ring,
            tuple(tuple((val if r + 1 in I else one) if r == c else zero for c in range(size)) for r in range(size)),
            I.n,
        )

    return diag(tl), diag(inv)


def delta_conjugate(I: IndexSet, alpha: SympMatrix, t: RingElement, direction: int = 1, verify: bool = True) -> SympMatrix:
    """delta_I alpha delta_I^{-1} (direction +1) or delta_I^{-1} alpha delta_I (direction -1).

    Computed entrywise: entry (i, j) picks up t when i is in I and j is not,
    t^{-1} when j is in I and i is not.  With ``verify`` the entrywise result
    is checked against the literal triple product.
    """
    if direction not in (1, -1):
        raise ValueError("direction must be +1 or -1")
    if alpha.n != I.n:
        raise DimensionMismatch("index set and matrix sizes differ")
    ring, tl, inv = _laurent_pair(t)
    up, down = (tl, inv) if direction == 1 else (inv, tl)
    src = alpha.change_ring(ring) if alpha.ring != ring else alpha

    def entry(r, c, x):
        e = (r + 1 in I) - (c + 1 in I)
        if not x or e == 0:
            return x
        return x * (up if e > 0 else down)

    beta = src.map(entry, ring)
    if verify:
        d, dinv = delta(I, t)
        literal = d @ src @ dinv if direction == 1 else dinv @ src @ d
        if literal != beta:
            raise AssertionError("entrywise conjugation pattern disagrees with the literal product")
    return beta


# --------------------------------------------------------------------------
# generators


def _check_se(n: int, i: int, j: int):
    if not (1 <= i <= 2 * n and 1 <= j <= 2 * n):
        raise BadIndices(f"indices ({i}, {j}) outside 1..{2 * n}")
    if i == j or sigma(i) == j:
        raise BadIndices(f"se needs i != j and sigma(i) != j, got ({i}, {j})")


def normalize_se(i: int, j: int, lam: RingElement) -> tuple[int, int, RingElement]:
    """Rewrite se_ij(lam) with i > j as the same matrix se_{s(j)s(i)}(-(-1)^{i+j} lam), i' < j'."""
    if i < j:
        return i, j, lam
    eps = _sign(i + j)
    return sigma(j), sigma(i), lam if eps < 0 else -lam


def se(n: int, i: int, j: int, lam: RingElement) -> SympMatrix:
    """Id + lam e_ij - lam (-1)^{i+j} e_{sigma(j) sigma(i)}."""
    _check_se(n, i, j)
    rows = _identity_rows(lam.ring, n)
    _apply_se(rows, i, j, lam)
    return SympMatrix._trusted(lam.ring, _freeze(rows), n)


def se_diag(n: int, i: int, lam: RingElement) -> SympMatrix:
    """Long-root generator Id + lam e_{i sigma(i)}."""
    if not 1 <= i <= 2 * n:
        raise BadIndices(f"index {i} outside 1..{2 * n}")
    rows = _identity_rows(lam.ring, n)
    _apply_se_diag(rows, i, lam)
    return SympMatrix._trusted(lam.ring, _freeze(rows), n)


def sw_with_report(n: int, i: int, j: int, u: RingElement) -> tuple[SympMatrix, bool]:
    """sw_ij(u) and whether the (-1)^{i+j} middle sign had to be abandoned.

    The product se_ij(u) se_{s(i)s(j)}(s u^{-1}) se_ij(u) is monomial when
    s = (-1)^{i+j}.  If that ever fails the literal s = +1 is tried; the
    second return value reports such a fallback.
    """
    _check_se(n, i, j)
    uinv = unit_inverse(u)
    if uinv is None:
        raise NotUnit(f"sw needs a unit, got {u!r}")
    for sign, fault in ((_sign(i + j), False), (1, True)):
        mid = uinv if sign > 0 else -uinv
        m = se(n, i, j, u) @ se(n, sigma(i), sigma(j), mid) @ se(n, i, j, u)
        if m.is_monomial():
            return m, fault
    raise SignConventionFault(f"sw_{i}{j}({u!r}) is not monomial under either sign reading")


def sw(n: int, i: int, j: int, u: RingElement) -> SympMatrix:
    return sw_with_report(n, i, j, u)[0]


def _identity_rows(ring: Ring, n: int) -> list[list[RingElement]]:
    one, zero = ring.one(), ring.zero()
    return [[one if r == c else zero for c in range(2 * n)] for r in range(2 * n)]


def _freeze(rows) -> tuple:
    return tuple(tuple(r) for r in rows)


def _add_row(rows, dst: int, src: int, lam: RingElement):
    """rows[dst] += lam * rows[src] (0-based)."""
    s = rows[src]
    d = rows[dst]
    rows[dst] = [a + lam * b if b else a for a, b in zip(d, s)]


def _apply_se(rows, i: int, j: int, lam: RingElement):
    """Left-multiply the row list by se_ij(lam) in place."""
    if not lam:
        return
    eps = _sign(i + j)
    _add_row(rows, i - 1, j - 1, lam)
    _add_row(rows, sigma(j) - 1, sigma(i) - 1, -lam if eps > 0 else lam)


def _apply_se_diag(rows, i: int, lam: RingElement):
    if lam:
        _add_row(rows, i - 1, sigma(i) - 1, lam)


# --------------------------------------------------------------------------
# words


@dataclass(frozen=True)
class SE:
    i: int
    j: int
    lam: RingElement
    inverse: bool = False

    def matrix(self, n: int) -> SympMatrix:
        return se(n, self.i, self.j, -self.lam if self.inverse else self.lam)

    def inverted(self) -> "SE":
        return SE(self.i, self.j, self.lam, not self.inverse)


@dataclass(frozen=True)
class SEDiag:
    i: int
    lam: RingElement
    inverse: bool = False

    def matrix(self, n: int) -> SympMatrix:
        return se_diag(n, self.i, -self.lam if self.inverse else self.lam)

    def inverted(self) -> "SEDiag":
        return SEDiag(self.i, self.lam, not self.inverse)


@dataclass(frozen=True)
class SW:
    i: int
    j: int
    u: RingElement
    inverse: bool = False

    def matrix(self, n: int) -> SympMatrix:
        # sw_ij(u)^{-1} = sw_ij(-u)
        return sw(n, self.i, self.j, -self.u if self.inverse else self.u)

    def inverted(self) -> "SW":
        return SW(self.i, self.j, self.u, not self.inverse)


@dataclass(frozen=True)
class DeltaConj:
    """One side of a delta_I conjugation frame: delta_I^direction."""

    I: IndexSet
    t: RingElement
    direction: int = 1
    inverse: bool = False

    def matrix(self, n: int) -> SympMatrix:
        d, dinv = delta(self.I, self.t)
        sgn = -self.direction if self.inverse else self.direction
        return d if sgn == 1 else dinv

    def inverted(self) -> "DeltaConj":
        return DeltaConj(self.I, self.t, self.direction, not self.inverse)


Token = SE | SEDiag | SW | DeltaConj


@dataclass(frozen=True)
class GenWord:
    """Product of generator tokens, read left to right."""

    n: int
    ring: Ring
    tokens: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(self.tokens))
        for tok in self.tokens:
            if isinstance(tok, (SE, SW)):
                _check_se(self.n, tok.i, tok.j)
            elif isinstance(tok, SEDiag):
                if not 1 <= tok.i <= 2 * self.n:
                    raise BadIndices(f"index {tok.i} outside 1..{2 * self.n}")
            elif isinstance(tok, DeltaConj):
                if tok.I.n != self.n:
                    raise BadIndices("delta frame size differs from word size")
            else:
                raise TypeError(f"unknown token {tok!r}")

    def __len__(self):
        return len(self.tokens)

    def __add__(self, other: "GenWord") -> "GenWord":
        return GenWord(self.n, self.ring, self.tokens + other.tokens)


def _eval_ring(w: GenWord) -> Ring:
    ring = w.ring
    for tok in w.tokens:
        if isinstance(tok, DeltaConj):
            ring = _laurent_pair(tok.t)[0]
            break
    return ring


def word_eval(w: GenWord) -> SympMatrix:
    """Evaluate the word; SE/SEDiag tokens are applied as row operations."""
    ring = _eval_ring(w)
    rows = _identity_rows(ring, w.n)
    for tok in reversed(w.tokens):
        if isinstance(tok, SE):
            lam = tok.lam.change_ring(ring)
            _apply_se(rows, tok.i, tok.j, -lam if tok.inverse else lam)
        elif isinstance(tok, SEDiag):
            lam = tok.lam.change_ring(ring)
            _apply_se_diag(rows, tok.i, -lam if tok.inverse else lam)
        else:
            m = tok.matrix(w.n).change_ring(ring)
            rows = [list(r) for r in (m @ SympMatrix._trusted(ring, _freeze(rows), w.n)).rows]
    return SympMatrix._trusted(ring, _freeze(rows), w.n)


def word_invert(w: GenWord) -> GenWord:
    return GenWord(w.n, w.ring, tuple(tok.inverted() for tok in reversed(w.tokens)))


def apply_token_left(rows, tok, n: int):
    """In-place left multiplication of a mutable row list by one SE/SEDiag token."""
    if isinstance(tok, SE):
        _apply_se(rows, tok.i, tok.j, -tok.lam if tok.inverse else tok.lam)
    elif isinstance(tok, SEDiag):
        _apply_se_diag(rows, tok.i, -tok.lam if tok.inverse else tok.lam)
    else:
        raise TypeError("only elementary tokens act as row operations")


def random_word(n: int, length: int, ring: Ring, rng: SplitMix64 | int = 0, spread: int = 3) -> GenWord:
    """Deterministic pseudo-random word of SE / SEDiag tokens with constant scalars.

    Per token: ``k = below(4)``; k == 0 gives SEDiag(i) with i = 1 + below(2n),
    otherwise SE(i, j) with i = 1 + below(2n) and j redrawn as 1 + below(2n)
    until j != i and j != sigma(i).  For n = 1 no such j exists, so every
    token is an SEDiag.  The scalar is ``below(p)`` over GF(p)
    and ``between(-spread, spread)`` over Z or Q.
    """
    if isinstance(rng, int):
        rng = SplitMix64(rng)
    toks = []
    for _ in range(length):
        kind = rng.below(4)
        i = 1 + rng.below(2 * n)
        if kind == 0 or n == 1:
            toks.append(SEDiag(i, ring.constant(ring.base.random_element(rng, spread))))
            continue
        j = 1 + rng.below(2 * n)
        while j == i or j == sigma(i):
            j = 1 + rng.below(2 * n)
        toks.append(SE(i, j, ring.constant(ring.base.random_element(rng, spread))))
    return GenWord(n, ring, tuple(toks))


# --------------------------------------------------------------------------
# subgroup shapes


def match_generator(alpha: SympMatrix):
    """The single SE / SEDiag token equal to alpha, if alpha is one (identity excluded)."""
    n = alpha.n
    off = [(r, c, x) for r, row in enumerate(alpha.rows) for c, x in enumerate(row) if r != c and x]
    if any(alpha.rows[k][k] != 1 for k in range(2 * n)) or not off:
        return None
    if len(off) == 1:
        r, c, x = off[0]
        if c + 1 == sigma(r + 1):
            return SEDiag(r + 1, x)
        return None
    if len(off) == 2:
        r, c, x = off[0]
        i, j = r + 1, c + 1
        if j == sigma(i):
            return None
        tok = SE(i, j, x)
        if se(n, i, j, x) == alpha:
            return tok
    return None


def _in_ideal(x: RingElement, Lambda) -> bool:
    return True if Lambda is None else bool(Lambda(x))


def subgroup_shape(alpha: SympMatrix, shape: str, I: IndexSet | None = None, Lambda=None) -> bool:
    """Conservative shape membership by entry-pattern inspection.

    ``shape`` is one of ``"sD"``, ``"sW"``, ``"sI"``, ``"sJ"``; ``Lambda`` is
    an optional predicate on ring elements describing the ideal.  ``sI`` and
    ``sJ`` recognise single generators and upper-unitriangular patterns in the
    ordering adapted to the index set; other products may be missed.
    """
    if shape == "sD":
        if not alpha.is_diagonal() or not alpha.is_symplectic():
            return False
        return all(_in_ideal(alpha.rows[k][k] - 1, Lambda) for k in range(alpha.size))
    if shape == "sW":
        return alpha.is_monomial() and alpha.is_symplectic()
    if shape in ("sI", "sJ"):
        if I is None:
            raise ValueError(f"{shape} needs an index set")
        tok = match_generator(alpha)
        if tok is not None:
            if isinstance(tok, SE):
                # se_ij(l) = se_{s(j)s(i)}(+-l): either first index may witness membership
                return bool({tok.i, sigma(tok.j)} & I.members) and _in_ideal(tok.lam, Lambda)
            # long roots in I arise as commutators of sI generators
            return tok.i in I and _in_ideal(tok.lam, Lambda)
        if alpha.is_identity():
            return True
        from .factorization import factor_unipotent

        try:
            word = factor_unipotent(alpha, I)
        except Exception:
            return False
        return all(_in_ideal(tok.lam, Lambda) for tok in word.tokens)
    raise ValueError(f"unknown shape {shape!r}")


# --------------------------------------------------------------------------
# transvections on P ⊥ R^2


def phi_q(q: Sequence[RingElement], p: Sequence[RingElement]) -> RingElement:
    """phi_q(p) = <p, q> for the standard form on R^{2k}."""
    if len(p) != len(q):
        raise DimensionMismatch("phi_q arguments differ in length")
    return form(p, q)


def transvection_delta(q, p, a: RingElement, b: RingElement):
    """(p, a, b) -> (p + b q, a - <p, q> + b, b)."""
    if len(p) != len(q):
        raise DimensionMismatch("p and q differ in length")
    return tuple(x + b * y for x, y in zip(p, q)), a - form(p, q) + b, b


def transvection_gamma(q, p, a: RingElement, b: RingElement):
    """(p, a, b) -> (p + a q, a, b + <p, q> - a)."""
    if len(p) != len(q):
        raise DimensionMismatch("p and q differ in length")
    return tuple(x + a * y for x, y in zip(p, q)), a, b + form(p, q) - a


def combined_form(v, w) -> RingElement:
    """<(p, a, b), (p', a', b')> = <p, p'> + a b' - b a' on P ⊥ R^2."""
    (p, a, b), (p2, a2, b2) = v, w
    return form(p, p2) + a * b2 - b * a2

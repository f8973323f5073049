"""Exact arithmetic in monoid algebras R[M].

Coefficients come from a :class:`BaseRing` (Z, Q or GF(p)).  Exponents live
in a finitely described monoid; internally every exponent is stored as an
integer vector scaled by the monoid's denominator bound ``D`` so that
fractional (c-divisible) exponents cost nothing extra.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import isqrt
from typing import Callable, Iterable, Mapping

from . import polyhedral
from .errors import (
    DivisionByZero,
    IncompleteAssignment,
    MembershipBoundExceeded,
    MixedRing,
    NotEuclidean,
    NotInMonoid,
    NotUnit,
)
from .linalg import hermite_rows, lattice_contains

DEFAULT_SEARCH_BOUND = 64


# --------------------------------------------------------------------------
# base rings


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    for d in range(2, isqrt(p) + 1):
        if p % d == 0:
            return False
    return True


@dataclass(frozen=True)
class BaseRing:
    """Z, Q or a prime field GF(p), p < 2^31."""

    kind: str
    p: int = 0

    def __post_init__(self):
        if self.kind not in ("Z", "Q", "Fp"):
            raise ValueError(f"unknown base ring kind {self.kind!r}")
        if self.kind == "Fp":
            if not (2 <= self.p < 2**31) or not _is_prime(self.p):
                raise ValueError(f"GF(p) needs a prime 2 <= p < 2^31, got {self.p}")
        elif self.p:
            raise ValueError("only prime fields carry a modulus")

    @property
    def name(self) -> str:
        return f"Fp:{self.p}" if self.kind == "Fp" else self.kind

    @classmethod
    def parse(cls, text: str) -> "BaseRing":
        text = text.strip()
        if text in ("Z", "Q"):
            return cls(text)
        if text.startswith("Fp:"):
            return cls("Fp", int(text[3:]))
        raise ValueError(f"cannot parse base ring {text!r}; expected Z, Q or Fp:<p>")

    @property
    def is_field(self) -> bool:
        return self.kind != "Z"

    @property
    def is_domain(self) -> bool:
        return True

    def coerce(self, x):
        if isinstance(x, str):
            x = Fraction(x)
        if self.kind == "Z":
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise ValueError(f"{x} is not an integer")
                return int(x)
            return int(x)
        if self.kind == "Q":
            return Fraction(x)
        x = Fraction(x)
        num = x.numerator % self.p
        den = x.denominator % self.p
        if den == 0:
            raise DivisionByZero(f"denominator of {x} vanishes mod {self.p}")
        return num * pow(den, -1, self.p) % self.p

    def reduce(self, c):
        return c % self.p if self.kind == "Fp" else c

    def is_unit(self, c) -> bool:
        if self.kind == "Z":
            return c in (1, -1)
        return c != 0

    def inverse(self, c):
        if not self.is_unit(c):
            raise NotUnit(f"{c} is not a unit of {self.name}")
        if self.kind == "Z":
            return c
        if self.kind == "Q":
            return 1 / Fraction(c)
        return pow(c, -1, self.p)

    def format(self, c) -> str:
        if self.kind == "Q":
            c = Fraction(c)
            return f"{c.numerator}/{c.denominator}"
        return str(c)

    def random_element(self, rng, spread: int = 3):
        """Draw from GF(p) uniformly, otherwise from [-spread, spread]."""
        if self.kind == "Fp":
            return rng.below(self.p)
        return self.coerce(rng.between(-spread, spread))


ZZ = BaseRing("Z")
QQ = BaseRing("Q")


def GF(p: int) -> BaseRing:
    return BaseRing("Fp", p)


# --------------------------------------------------------------------------
# monoids


class MonoidSpec:
    """Finitely described commutative monoid embedded in Q^rank.

    Subclasses work with *scaled* exponent vectors: ``u = D * v`` where
    ``D = self.denominator``, so every stored exponent is an int tuple.
    """

    rank: int

    @property
    def denominator(self) -> int:
        return 1

    def generators(self) -> tuple[tuple[int, ...], ...]:
        raise NotImplementedError

    def contains_scaled(self, u: tuple[int, ...]) -> bool:
        raise NotImplementedError

    @property
    def is_positive(self) -> bool:
        raise NotImplementedError

    def localize_scaled(self, u: tuple[int, ...]) -> "MonoidSpec":
        raise NotImplementedError

    def scale(self, v) -> tuple[int, ...]:
        """Exponent vector (rationals) -> scaled integer key; raises if off-lattice."""
        if len(v) != self.rank:
            raise NotInMonoid(f"exponent {tuple(v)} has length {len(v)}, monoid rank is {self.rank}")
        D = self.denominator
        out = []
        for x in v:
            y = Fraction(x) * D
            if y.denominator != 1:
                raise NotInMonoid(f"exponent {tuple(v)} has a denominator not dividing {D}")
            out.append(int(y))
        return tuple(out)

    def unscale(self, u) -> tuple[Fraction, ...]:
        D = self.denominator
        return tuple(Fraction(x, D) for x in u)

    def contains(self, v) -> bool:
        try:
            u = self.scale(v)
        except NotInMonoid:
            return False
        return self.contains_scaled(u)

    def cone_description(self):
        return polyhedral.describe(self.generators(), self.rank)


@dataclass(frozen=True)
class FreeMixed(MonoidSpec):
    """Z_+^m x Z^n, with the Laurent coordinates flagged per position."""

    laurent: tuple[bool, ...]

    @classmethod
    def standard(cls, m: int, n: int = 0) -> "FreeMixed":
        return cls((False,) * m + (True,) * n)

    @property
    def rank(self) -> int:
        return len(self.laurent)

    @property
    def m(self) -> int:
        return sum(1 for f in self.laurent if not f)

    @property
    def n(self) -> int:
        return sum(1 for f in self.laurent if f)

    def generators(self):
        r = self.rank
        out = []
        for k, lau in enumerate(self.laurent):
            e = tuple(1 if c == k else 0 for c in range(r))
            out.append(e)
            if lau:
                out.append(tuple(-x for x in e))
        return tuple(out)

    def contains_scaled(self, u) -> bool:
        return all(lau or x >= 0 for x, lau in zip(u, self.laurent))

    @property
    def is_positive(self) -> bool:
        return not any(self.laurent)

    def localize_scaled(self, u):
        support = [k for k, x in enumerate(u) if x]
        if all(self.laurent[k] for k in support):
            return self
        if len(support) == 1 and u[support[0]] == 1:
            mask = list(self.laurent)
            mask[support[0]] = True
            return FreeMixed(tuple(mask))
        neg = tuple(-x for x in u)
        return Affine(self.rank, self.generators() + (neg,))


@dataclass(frozen=True)
class Affine(MonoidSpec):
    """Monoid generated by finitely many integer vectors.

    Membership runs a breadth-first certificate search over non-negative
    combinations with coefficient sum <= ``search_bound``.  When the cone is
    pointed the search is exhaustive well before the bound in practice; if
    the budget runs out first :class:`MembershipBoundExceeded` is raised.
    """

    rank: int
    gens: tuple[tuple[int, ...], ...]
    search_bound: int = DEFAULT_SEARCH_BOUND
    approximation_bound: int | None = field(default=None, compare=True)

    def __post_init__(self):
        gens = tuple(tuple(int(x) for x in g) for g in self.gens)
        object.__setattr__(self, "gens", gens)
        for g in gens:
            if len(g) != self.rank:
                raise ValueError(f"generator {g} does not have rank {self.rank}")
            if not any(g):
                raise ValueError("affine generators must be nonzero")
        if len(set(gens)) != len(gens):
            raise ValueError("affine generators must be pairwise distinct")

    def generators(self):
        return self.gens

    @cached_property
    def _lattice(self):
        return hermite_rows(self.gens)

    @cached_property
    def _functional(self):
        desc = self.cone_description()
        if polyhedral.is_pointed(desc, self.rank):
            return polyhedral.positive_functional(desc)
        return None

    @property
    def is_positive(self) -> bool:
        return polyhedral.is_pointed(self.cone_description(), self.rank)

    def decompose(self, u) -> tuple[int, ...] | None:
        """Coefficients c with sum c_k g_k = u, or None when u is not a member."""
        return _affine_decompose(self, tuple(u))

    def contains_scaled(self, u) -> bool:
        return self.decompose(u) is not None

    def localize_scaled(self, u):
        neg = tuple(-x for x in u)
        if neg in self.gens or not any(u):
            return self
        return Affine(self.rank, self.gens + (neg,), self.search_bound)


def _affine_decompose(monoid: Affine, target):
    r = monoid.rank
    zero = (0,) * r
    if target == zero:
        return (0,) * len(monoid.gens)
    if not polyhedral.contains(monoid.cone_description(), target):
        return None
    if not lattice_contains(monoid._lattice, target):
        return None
    h = monoid._functional
    cap = None if h is None else polyhedral.dot(h, target)
    parents = {zero: None}
    frontier = [zero]
    for _ in range(monoid.search_bound):
        nxt = []
        for w in frontier:
            for k, g in enumerate(monoid.gens):
                x = tuple(a + b for a, b in zip(w, g))
                if x in parents:
                    continue
                if cap is not None and polyhedral.dot(h, x) > cap:
                    continue
                parents[x] = (w, k)
                nxt.append(x)
        if target in parents:
            coeffs = [0] * len(monoid.gens)
            x = target
            while parents[x] is not None:
                x, k = parents[x]
                coeffs[k] += 1
            return tuple(coeffs)
        if not nxt:
            return None
        frontier = nxt
    raise MembershipBoundExceeded(
        f"no certificate for {target} within coefficient sum {monoid.search_bound}"
    )


@dataclass(frozen=True)
class CDivisibleTruncation(MonoidSpec):
    """Level-k truncation of the c-divisible hull: {v : c^k v in base}."""

    base: MonoidSpec
    c: int
    level: int

    def __post_init__(self):
        if self.c < 2:
            raise ValueError("c must exceed 1")
        if self.level < 0:
            raise ValueError("truncation level must be non-negative")
        if self.base.denominator != 1:
            raise ValueError("base monoid must have integer exponents")

    @property
    def rank(self) -> int:
        return self.base.rank

    @property
    def denominator(self) -> int:
        return self.c**self.level

    def generators(self):
        return self.base.generators()

    def contains_scaled(self, u) -> bool:
        return self.base.contains_scaled(u)

    @property
    def is_positive(self) -> bool:
        return self.base.is_positive

    def localize_scaled(self, u):
        return CDivisibleTruncation(self.base.localize_scaled(u), self.c, self.level)


# --------------------------------------------------------------------------
# rings and elements


@dataclass(frozen=True)
class Ring:
    base: BaseRing
    monoid: MonoidSpec

    @property
    def rank(self) -> int:
        return self.monoid.rank

    def element(self, terms: Mapping | Iterable = ()) -> "RingElement":
        """Build from ``{exponent: coeff}`` or ``[(exponent, coeff), ...]``; exponents are checked."""
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        base = self.base
        for exp, coeff in items:
            u = self.monoid.scale(exp)
            if not self.monoid.contains_scaled(u):
                raise NotInMonoid(f"exponent {tuple(exp)} is not in the monoid")
            c = base.reduce(acc.get(u, 0) + base.coerce(coeff))
            acc[u] = c
        return RingElement(self, {u: c for u, c in acc.items() if c})

    def zero(self) -> "RingElement":
        return RingElement(self, {})

    def one(self) -> "RingElement":
        return self.constant(1)

    def constant(self, c) -> "RingElement":
        c = self.base.coerce(c)
        return RingElement(self, {(0,) * self.rank: c} if c else {})

    def monomial(self, exponent, coeff=1) -> "RingElement":
        return self.element([(exponent, coeff)])

    def var(self, k: int) -> "RingElement":
        """The coordinate monomial x_k (must lie in the monoid)."""
        return self.monomial(tuple(1 if c == k else 0 for c in range(self.rank)))

    def gens(self) -> list["RingElement"]:
        return [self.var(k) for k in range(self.rank)]

    def localize(self, t: "RingElement") -> "Ring":
        """Ring with the monomial ``t`` inverted (adjoins -exp(t) to the monoid)."""
        if not t.is_monomial():
            raise NotUnit("only monomials can be inverted by localization")
        (u,) = t._terms
        return Ring(self.base, self.monoid.localize_scaled(u))

    def __repr__(self):
        return f"Ring({self.base.name}, {self.monoid!r})"


def polynomial_ring(base: BaseRing, m: int, n: int = 0) -> Ring:
    """R[x_0..x_{m-1}, y_0^{+-1}..y_{n-1}^{+-1}]."""
    return Ring(base, FreeMixed.standard(m, n))


def scalars(base: BaseRing) -> Ring:
    """The base ring itself, as the monoid algebra over the trivial monoid."""
    return Ring(base, FreeMixed(()))


class RingElement:
    """Immutable sparse element of R[M]; zero coefficients are never stored."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: Ring, terms: dict):
        self.ring = ring
        self._terms = terms
        self._hash = None

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> tuple[tuple[tuple[Fraction, ...], object], ...]:
        """Canonically ordered (exponent, coefficient) pairs."""
        unscale = self.ring.monoid.unscale
        return tuple((unscale(u), self._terms[u]) for u in sorted(self._terms))

    def scaled_terms(self) -> dict:
        return dict(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and not any(next(iter(self._terms))))

    def constant_value(self):
        """Coefficient of the zero exponent."""
        return self._terms.get((0,) * self.ring.rank, 0)

    def coefficient(self, exponent) -> object:
        return self._terms.get(self.ring.monoid.scale(exponent), 0)

    def degree(self) -> int:
        """Degree in a univariate polynomial ring; -1 for zero."""
        if self.ring.rank != 1:
            raise NotEuclidean("degree() needs a rank-1 ring")
        if not self._terms:
            return -1
        return max(u[0] for u in self._terms)

    # -- arithmetic ---------------------------------------------------------

    def _lift(self, other) -> "RingElement":
        if isinstance(other, RingElement):
            if other.ring is not self.ring and other.ring != self.ring:
                raise MixedRing(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if not other._terms:
            return self
        if not self._terms:
            return other
        red = self.ring.base.reduce
        out = dict(self._terms)
        for u, c in other._terms.items():
            prev = out.get(u)
            if prev is None:
                out[u] = c
            else:
                s = red(prev + c)
                if s:
                    out[u] = s
                else:
                    del out[u]
        return RingElement(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        red = self.ring.base.reduce
        return RingElement(self.ring, {u: red(-c) for u, c in self._terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        a, b = self._terms, other._terms
        if not a or not b:
            return RingElement(self.ring, {})
        red = self.ring.base.reduce
        if len(a) == 1 and len(b) == 1:
            (ua, ca), = a.items()
            (ub, cb), = b.items()
            c = red(ca * cb)
            if not c:
                return RingElement(self.ring, {})
            return RingElement(self.ring, {tuple(x + y for x, y in zip(ua, ub)): c})
        out: dict = {}
        for ua, ca in a.items():
            for ub, cb in b.items():
                u = tuple(x + y for x, y in zip(ua, ub))
                out[u] = out.get(u, 0) + ca * cb
        return RingElement(self.ring, {u: c for u, c in ((u, red(c)) for u, c in out.items()) if c})

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return unit_inverse_or_raise(self) ** (-e)
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self * unit_inverse_or_raise(other)

    def scale(self, c) -> "RingElement":
        """Multiply by a base-ring scalar."""
        c = self.ring.base.coerce(c)
        red = self.ring.base.reduce
        return RingElement(self.ring, {u: v for u, v in ((u, red(x * c)) for u, x in self._terms.items()) if v})

    def change_ring(self, ring: Ring, check: bool = False) -> "RingElement":
        """Reinterpret in a ring with the same base and a larger monoid of equal rank/denominator."""
        if ring.base != self.ring.base or ring.rank != self.ring.rank:
            raise MixedRing(f"cannot move {self.ring} elements into {ring}")
        if ring.monoid.denominator != self.ring.monoid.denominator:
            raise MixedRing("exponent scalings differ")
        if check:
            for u in self._terms:
                if not ring.monoid.contains_scaled(u):
                    raise NotInMonoid(f"exponent {u} not in target monoid")
        return RingElement(ring, dict(self._terms))

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.constant(other)
        if not isinstance(other, RingElement):
            return NotImplemented
        return (other.ring is self.ring or other.ring == self.ring) and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        if not self._terms:
            return "0"
        names = [f"x{k}" for k in range(self.ring.rank)]
        D = self.ring.monoid.denominator
        parts = []
        for u in sorted(self._terms):
            c = self._terms[u]
            mono = []
            for name, x in zip(names, u):
                if x:
                    e = Fraction(x, D)
                    mono.append(name if e == 1 else f"{name}^{e}" if e.denominator == 1 else f"{name}^({e})")
            neg = self.ring.base.kind != "Fp" and c < 0
            mag = -c if neg else c
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = "*".join(mono)
            else:
                body = f"{mag}*" + "*".join(mono)
            parts.append(("- " if neg else "+ ") + body)
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


def _check_same(a: RingElement, b: RingElement):
    if a.ring is not b.ring and a.ring != b.ring:
        raise MixedRing(f"{a.ring} vs {b.ring}")


def poly_add(a: RingElement, b: RingElement) -> RingElement:
    _check_same(a, b)
    return a + b


def poly_mul(a: RingElement, b: RingElement) -> RingElement:
    _check_same(a, b)
    return a * b


def unit_inverse(a: RingElement) -> RingElement | None:
    """Inverse of ``a`` if it is a unit, else None.

    Over a domain the units of R[M] are exactly the monomials c*x^v with c a
    unit of R and -v in M, so the test is decisive for every shipped base.
    """
    if len(a._terms) != 1:
        return None
    (u, c), = a._terms.items()
    base = a.ring.base
    if not base.is_unit(c):
        return None
    neg = tuple(-x for x in u)
    monoid = a.ring.monoid
    try:
        if not monoid.contains_scaled(neg):
            return None
    except MembershipBoundExceeded:
        return None
    return RingElement(a.ring, {neg: base.inverse(c)})


def unit_inverse_or_raise(a: RingElement) -> RingElement:
    inv = unit_inverse(a)
    if inv is None:
        if not a:
            raise DivisionByZero("division by zero")
        raise NotUnit(f"{a!r} is not a unit")
    return inv


def is_unit(a: RingElement) -> bool:
    return unit_inverse(a) is not None


def _euclid_kind(ring: Ring) -> str:
    if ring.rank == 0:
        return "field" if ring.base.is_field else "integers"
    if ring.rank == 1 and ring.base.is_field and isinstance(ring.monoid, FreeMixed) and not ring.monoid.laurent[0]:
        return "univariate"
    raise NotEuclidean(f"{ring} has no Euclidean structure here")


def euclidean_norm(a: RingElement) -> int:
    """|a| over Z, degree over k[x], 0 for nonzero field scalars; -1 for zero."""
    kind = _euclid_kind(a.ring)
    if not a:
        return -1
    if kind == "integers":
        return abs(a.constant_value())
    if kind == "field":
        return 0
    return a.degree()


def euclidean_divmod(a: RingElement, b: RingElement) -> tuple[RingElement, RingElement]:
    """Division with remainder: a = q*b + r with norm(r) < norm(b) or r = 0."""
    _check_same(a, b)
    kind = _euclid_kind(a.ring)
    if not b:
        raise DivisionByZero("euclidean_divmod by zero")
    ring = a.ring
    if kind == "integers":
        q, r = divmod(a.constant_value(), b.constant_value())
        return ring.constant(q), ring.constant(r)
    if kind == "field":
        return a * unit_inverse_or_raise(b), ring.zero()
    base = ring.base
    db = b.degree()
    lead_inv = base.inverse(b._terms[(db,)])
    q: dict = {}
    r = a
    while r and r.degree() >= db:
        dr = r.degree()
        c = base.reduce(r._terms[(dr,)] * lead_inv)
        q[(dr - db,)] = c
        r = r - RingElement(ring, {(dr - db,): c}) * b
    return RingElement(ring, q), r


def _power(img: RingElement, e: Fraction) -> RingElement:
    if e.denominator == 1:
        e = int(e)
        if e >= 0:
            return img**e
        inv = unit_inverse(img)
        if inv is None:
            raise NotUnit(f"negative power of non-unit {img!r}")
        return inv ** (-e)
    if not img.is_monomial() or next(iter(img._terms.values())) != 1:
        raise NotUnit(f"fractional power of {img!r} is undefined")
    (u,) = img._terms
    ring = img.ring
    return ring.monomial(tuple(x * e for x in ring.monoid.unscale(u)))


def substitute(a: RingElement, assignment: Mapping[int, RingElement], target: Ring | None = None) -> RingElement:
    """Ring homomorphism sending coordinate x_k to ``assignment[k]``."""
    imgs = dict(assignment)
    if target is None:
        rings = {img.ring for img in imgs.values()}
        if len(rings) > 1:
            raise MixedRing("substitution images live in different rings")
        target = rings.pop() if rings else a.ring
    for img in imgs.values():
        if img.ring != target:
            raise MixedRing("substitution image outside the target ring")
    if target.base != a.ring.base:
        raise MixedRing("substitution cannot change the base ring")
    D = a.ring.monoid.denominator
    result = target.zero()
    cache: dict = {}
    for u, c in a._terms.items():
        term = target.constant(c)
        for k, x in enumerate(u):
            if not x:
                continue
            if k not in imgs:
                raise IncompleteAssignment(k)
            e = Fraction(x, D)
            key = (k, e)
            if key not in cache:
                cache[key] = _power(imgs[k], e)
            term = term * cache[key]
            if not term:
                break
        result = result + term
    return result


def retract(a: RingElement, face) -> RingElement:
    """Keep exactly the terms whose exponent lies in ``face``.

    ``face`` is anything with a ``contains(vector)`` method (e.g. a
    RationalCone) or a plain predicate on exponent vectors.
    """
    test: Callable = face.contains if hasattr(face, "contains") else face
    unscale = a.ring.monoid.unscale
    return RingElement(a.ring, {u: c for u, c in a._terms.items() if test(unscale(u))})

"""Rational-cone model of monoid geometry.

Points of the sphere are represented by primitive integer rays and spherical
convex hulls by polyhedral cones, so everything stays exact.  Enumerations
are bounded by the generator sum (the number of monoid generators added
together), and every result built from one records that bound.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product

from . import polyhedral
from .errors import NotInMonoid, NotSubcone, PyramidSplitError, RankTooLarge, Simplicial, TooSmall
from .linalg import dot, lattice_contains, primitive, rank
from .rings import Affine, CDivisibleTruncation, MonoidSpec

MAX_RANK = 6


def _colex_key(v):
    return tuple(reversed(v))


@dataclass(frozen=True)
class RationalCone:
    """Cone generated by a list of primitive integer rays.

    The list may contain rays that are not extreme; ``extreme`` prunes
    them.  Facet normals are inward: v is in the cone iff every facet
    normal pairs non-negatively with v and every equation vanishes on it.
    """

    rank: int
    rays: tuple

    def __post_init__(self):
        if self.rank > MAX_RANK:
            raise RankTooLarge(f"rank {self.rank} exceeds {MAX_RANK}")
        seen = []
        for r in self.rays:
            if len(r) != self.rank:
                raise ValueError(f"ray {tuple(r)} does not have length {self.rank}")
            p = primitive(r)
            if p not in seen:
                seen.append(p)
        object.__setattr__(self, "rays", tuple(seen))

    @classmethod
    def generated_by(cls, rank: int, gens) -> "RationalCone":
        """Cone of ``gens`` keeping only the extreme rays (first occurrence wins)."""
        return cls(rank, tuple(gens)).extreme()

    @cached_property
    def description(self):
        return polyhedral.describe(self.rays, self.rank)

    @property
    def equations(self):
        return self.description[0]

    @property
    def facets(self):
        return self.description[1]

    @property
    def dim(self) -> int:
        return rank(self.rays) if self.rays else 0

    @property
    def is_pointed(self) -> bool:
        return polyhedral.is_pointed(self.description, self.rank) if self.rays else True

    def contains(self, v) -> bool:
        return polyhedral.contains(self.description, v)

    def interior_contains(self, v) -> bool:
        """Relative interior membership."""
        return polyhedral.interior_contains(self.description, v)

    def contains_cone(self, other: "RationalCone") -> bool:
        return all(self.contains(r) for r in other.rays)

    def same_as(self, other: "RationalCone") -> bool:
        return self.contains_cone(other) and other.contains_cone(self)

    def extreme(self) -> "RationalCone":
        kept = list(self.rays)
        for r in list(self.rays):
            others = [s for s in kept if s != r]
            if others and polyhedral.contains(polyhedral.describe(tuple(others), self.rank), r):
                kept = others
        return RationalCone(self.rank, tuple(kept))

    def face_rays(self, normals) -> tuple:
        return tuple(r for r in self.rays if all(dot(h, r) == 0 for h in normals))

    def faces(self) -> list[tuple]:
        """Ray sets of all faces, from the whole cone down to the apex."""
        out = []
        fs = self.facets
        for k in range(len(fs) + 1):
            for sub in combinations(fs, k):
                rs = self.face_rays(sub)
                if rs not in out:
                    out.append(rs)
        return sorted(out, key=lambda rs: (-len(rs), rs))

    def facet_cones(self) -> list["RationalCone"]:
        return [RationalCone(self.rank, self.face_rays((h,))) for h in self.facets]


# --------------------------------------------------------------------------
# cones and submonoids of monoids


def _check_rank(M: MonoidSpec):
    if M.rank > MAX_RANK:
        raise RankTooLarge(f"rank {M.rank} exceeds {MAX_RANK}")


def cone_of(M: MonoidSpec) -> RationalCone:
    _check_rank(M)
    return RationalCone.generated_by(M.rank, M.generators())


def enumerate_members(M: MonoidSpec, bound: int) -> dict[tuple[int, ...], int]:
    """Scaled members reachable with generator sum <= bound, mapped to that minimal sum."""
    gens = M.generators()
    zero = (0,) * M.rank
    depth = {zero: 0}
    frontier = [zero]
    for d in range(1, bound + 1):
        nxt = []
        for w in frontier:
            for g in gens:
                x = tuple(a + b for a, b in zip(w, g))
                if x not in depth:
                    depth[x] = d
                    nxt.append(x)
        frontier = nxt
    return depth


def _greedy_generators(candidates: dict[tuple[int, ...], int]) -> list[tuple[int, ...]]:
    """Minimal generating set of the candidate pool, taken in degree order.

    A candidate is kept when it is not a sum of already kept ones (sums are
    only followed inside the pool).
    """
    pool = set(candidates)
    order = sorted(candidates, key=lambda u: (candidates[u], u))
    chosen: list[tuple[int, ...]] = []
    reach: set = set()
    for x in order:
        if x in reach:
            continue
        chosen.append(x)
        stack = [x] + list(reach)
        reach.add(x)
        while stack:
            s = stack.pop()
            for g in chosen:
                y = tuple(a + b for a, b in zip(s, g))
                if y in pool and y not in reach:
                    reach.add(y)
                    stack.append(y)
    return chosen


def _rebuild(M: MonoidSpec, scaled_gens, bound: int) -> MonoidSpec:
    gens = tuple(scaled_gens)
    if isinstance(M, CDivisibleTruncation):
        base = Affine(M.rank, gens, approximation_bound=bound)
        return CDivisibleTruncation(base, M.c, M.level)
    search = getattr(M, "search_bound", 64)
    return Affine(M.rank, gens, search_bound=search, approximation_bound=bound)


def submonoid_select(M: MonoidSpec, X: RationalCone, bound: int) -> MonoidSpec:
    """Bounded approximation of M(X) = {m in M : m in X}.

    The result is generated by a minimal generating set of the members of
    generator sum <= bound that lie in X; ``approximation_bound`` records it.
    """
    _check_rank(M)
    if X.rank != M.rank:
        raise NotSubcone("cone and monoid ranks differ")
    if not cone_of(M).contains_cone(X):
        raise NotSubcone("X is not contained in the cone of M")
    pool = {u: d for u, d in enumerate_members(M, bound).items() if any(u) and X.contains(u)}
    return _rebuild(M, _greedy_generators(pool), bound)


def interior_monoid(M: MonoidSpec, bound: int) -> MonoidSpec:
    """Bounded generating set of int(M) together with 0."""
    _check_rank(M)
    C = cone_of(M)
    if not C.facets:
        return M
    pool = {u: d for u, d in enumerate_members(M, bound).items() if any(u) and C.interior_contains(u)}
    return _rebuild(M, _greedy_generators(pool), bound)


@dataclass(frozen=True)
class DivisibilityReport:
    c: int
    bound: int
    witnesses: dict = field(default_factory=dict)  # member -> root (unscaled tuples)
    failures: tuple = ()
    truncation_failures: tuple = ()

    @property
    def holds_on_sample(self) -> bool:
        """No failure other than those caused by the truncation level."""
        return not self.failures


def is_c_divisible(M: MonoidSpec, c: int, bound: int) -> DivisibilityReport:
    """Semi-decision of c-divisibility on members of generator sum <= bound.

    For a truncation at level k, members whose c-th part needs level k+1 are
    listed under ``truncation_failures`` rather than ``failures``.
    """
    if c < 2:
        raise ValueError("c must exceed 1")
    witnesses, failures, trunc = {}, [], []
    for u in sorted(enumerate_members(M, bound)):
        v = M.unscale(u)
        root = tuple(x / c for x in v)
        if M.contains(root):
            witnesses[tuple(v)] = root
            continue
        if isinstance(M, CDivisibleTruncation):
            deeper = CDivisibleTruncation(M.base, M.c, M.level + 1) if M.c == c else None
            if deeper is not None and deeper.contains(root):
                trunc.append(tuple(v))
                continue
        failures.append(tuple(v))
    return DivisibilityReport(c, bound, witnesses, tuple(failures), tuple(trunc))


# --------------------------------------------------------------------------
# polarized triples


@dataclass(frozen=True)
class PolarizedTriple:
    monoid: Affine
    apex_ray: tuple
    base_polytope: RationalCone
    t_exponent: tuple
    generation_bound: int = 8

    def __post_init__(self):
        object.__setattr__(self, "apex_ray", primitive(self.apex_ray))
        object.__setattr__(self, "t_exponent", tuple(int(x) for x in self.t_exponent))


@dataclass(frozen=True)
class AxiomResult:
    passed: bool
    detail: str
    witness: object = None


@dataclass(frozen=True)
class PolarizedReport:
    axioms: dict
    bound: int

    @property
    def passed(self) -> bool:
        return all(a.passed for a in self.axioms.values())

    def summary(self) -> dict:
        out = {}
        for name, a in self.axioms.items():
            out[name] = {"pass": a.passed, "detail": a.detail}
            if a.witness is not None:
                out[name]["witness"] = [list(w) if isinstance(w, tuple) else w for w in a.witness]
        out["verified_to_bound"] = self.bound
        return out


def _normality_sample(M: Affine, C: RationalCone, bound: int):
    """Lattice points of gp(M) in cone(M), coordinates in [-bound, bound], that miss M."""
    basis = M._lattice
    for x in product(range(-bound, bound + 1), repeat=M.rank):
        if any(x) and C.contains(x) and lattice_contains(basis, x):
            try:
                if not M.contains(x):
                    return x
            except Exception:
                return x
    return None


def validate_polarized(T: PolarizedTriple) -> PolarizedReport:
    M, P, G, B = T.monoid, T.apex_ray, T.base_polytope, T.generation_bound
    C = cone_of(M)
    results = {}

    # (i) structure, normality sample, apex position, t generating M({P})
    problems = []
    witness = None
    if not isinstance(M, Affine):
        problems.append("monoid is not affine")
    if not C.contains_cone(G):
        problems.append("base polytope leaves the cone of M")
    for face in G.faces():
        if not face or rank(face) >= G.dim:
            continue  # the apex face spans {0}; the whole polytope is not proper
        if rank(list(face) + [P]) == rank(face):
            problems.append(f"P lies in the span of the face {list(face)}")
            witness = face
            break
    bad = _normality_sample(M, C, B)
    if bad is not None:
        problems.append(f"normality fails at {bad}")
        witness = witness or (bad,)
    t = T.t_exponent
    ray_P = RationalCone(M.rank, (P,))
    if not (any(t) and ray_P.contains(t) and M.contains(t)):
        problems.append("t is not a nonzero member on the apex ray")
    else:
        for u in enumerate_members(M, B):
            if any(u) and ray_P.contains(u):
                k = Fraction(dot(u, t), dot(t, t))
                if k.denominator != 1 or tuple(k * x for x in t) != u:
                    problems.append(f"{u} on the apex ray is not a multiple of t")
                    witness = (u,)
                    break
    results["i"] = AxiomResult(not problems, "; ".join(problems) or "ok", witness)

    # (ii) dimensions and cone(M) = cone(P, Gamma)
    problems = []
    if G.dim != C.dim:
        problems.append(f"dim Gamma = {G.dim} but dim cone(M) = {C.dim}")
    hull = RationalCone(M.rank, (P,) + G.rays)
    if not hull.same_as(C):
        problems.append("cone(M) differs from conv(P, Gamma)")
    results["ii"] = AxiomResult(not problems, "; ".join(problems) or "ok")

    # (iii) each facet gamma: M(conv(P, gamma)) generated by M({P}) and M(gamma)
    problems = []
    witness = None
    if results["ii"].passed and not problems:
        members = enumerate_members(M, B)
        for gam in G.facet_cones():
            X = RationalCone(M.rank, (P,) + gam.rays)
            for u in sorted(members):
                if not any(u) or not X.contains(u):
                    continue
                if not _splits(M, u, t, gam):
                    problems.append(f"{u} in conv(P, {list(gam.rays)}) is not t^k times an element of M(gamma)")
                    witness = (u,)
                    break
            if problems:
                break
    else:
        problems.append("skipped: axiom (ii) failed")
    results["iii"] = AxiomResult(not problems, "; ".join(problems) or f"verified to bound {B}", witness)
    return PolarizedReport(results, B)


def _splits(M: MonoidSpec, u, t, gam: RationalCone) -> bool:
    k = 0
    while True:
        rest = tuple(a - k * b for a, b in zip(u, t))
        try:
            ok = M.contains(rest) and gam.contains(rest)
        except NotInMonoid:
            ok = False
        if ok:
            return True
        if not any(rest) or not cone_of(M).contains(rest):
            return False
        k += 1


def shipped_polarized_example() -> PolarizedTriple:
    """Z_+^2 with apex e1, base cone((1,1),(0,1)) and t = e1."""
    M = Affine(2, ((1, 0), (0, 1)))
    return PolarizedTriple(M, (1, 0), RationalCone(2, ((1, 1), (0, 1))), (1, 0), 8)


# --------------------------------------------------------------------------
# pyramid split


@dataclass(frozen=True)
class PyramidSplit:
    delta: RationalCone
    gamma: RationalCone
    apex: tuple
    face: RationalCone

    def __iter__(self):
        return iter((self.delta, self.gamma))


def _split_over(G: RationalCone, v, n) -> PyramidSplit:
    h = tuple(-x for x in n)
    pos = [r for r in G.rays if dot(h, r) > 0]
    neg = [r for r in G.rays if dot(h, r) < 0]
    on = [r for r in G.rays if dot(h, r) == 0]
    cross = []
    for a in pos:
        for b in neg:
            w = tuple(dot(h, a) * y - dot(h, b) * x for x, y in zip(a, b))
            cross.append(primitive(w))
    F = RationalCone.generated_by(G.rank, on + cross) if on + cross else RationalCone(G.rank, ())
    delta = RationalCone.generated_by(G.rank, pos + on + cross)
    gamma = RationalCone.generated_by(G.rank, neg + on + cross)
    return PyramidSplit(delta, gamma, tuple(v), F)


def pyramid_split(G: RationalCone) -> PyramidSplit:
    """Cut G into a pyramid delta = cone(v, F) and gamma with delta ∩ gamma = F.

    Candidate apexes v are the listed rays in colex order (last coordinate
    compared first).  For the first v whose removal keeps the dimension and
    leaves v outside cone(others), the cut is the lexicographically least
    facet of cone(others) visible from v.  When no candidate works every
    ray is needed for the dimension (a simplicial cone): :class:`Simplicial`
    is raised carrying the canonical split over the first ray, namely
    delta = G and gamma = the opposite facet.
    """
    if G.dim < 2:
        raise TooSmall(f"pyramid split needs dimension >= 2, got {G.dim}")
    if not G.is_pointed:
        raise PyramidSplitError("pyramid split needs a pointed cone")
    order = sorted(G.rays, key=_colex_key)
    for v in order:
        others = tuple(r for r in G.rays if r != v)
        if rank(others) < G.dim:
            continue
        C = RationalCone(G.rank, others)
        visible = sorted(n for n in C.facets if dot(n, v) < 0)
        if not visible:
            continue
        return _split_over(G, v, visible[0])
    v = order[0]
    opposite = RationalCone(G.rank, tuple(r for r in G.rays if r != v))
    split = PyramidSplit(G, opposite, v, opposite)
    raise Simplicial(f"cone is simplicial; canonical split over {v}", split=split)

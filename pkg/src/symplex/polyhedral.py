"""Facet descriptions of finitely generated rational cones.

A cone is given by generating integer vectors in Z^r.  Its description is
``(equations, facets)``: integer vectors ``e`` with ``e . x = 0`` on the
linear span, and primitive inward normals ``h`` with ``h . x >= 0`` on the
cone.  Facets are found by brute force over (d-1)-subsets of the generators,
where d is the dimension of the span; fine for r <= 6.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .linalg import dot, nullspace, primitive, rank, rref


@lru_cache(maxsize=4096)
def describe(gens: tuple[tuple[int, ...], ...], ambient: int):
    gens = tuple(g for g in gens if any(g))
    if not gens:
        eqs = tuple(tuple(1 if k == c else 0 for k in range(ambient)) for c in range(ambient))
        return eqs, ()
    eqs = tuple(primitive(v) for v in nullspace(gens, ambient))
    red, _ = rref(gens)
    d = len(red)
    facets = set()
    for sub in combinations(range(len(gens)), d - 1):
        rows = [gens[k] for k in sub]
        if d > 1 and rank(rows) != d - 1:
            continue
        # normals lying in the span: orthogonal to the subset and to every equation
        ns = nullspace(list(rows) + [list(e) for e in eqs], ambient)
        if len(ns) != 1:
            continue
        h = ns[0]
        vals = [dot(h, g) for g in gens]
        if all(v >= 0 for v in vals):
            sign = 1
        elif all(v <= 0 for v in vals):
            sign = -1
        else:
            continue
        if all(v == 0 for v in vals):
            continue
        facets.add(primitive([sign * x for x in h]))
    return eqs, tuple(sorted(facets))


def contains(description, v) -> bool:
    eqs, facets = description
    return all(dot(e, v) == 0 for e in eqs) and all(dot(h, v) >= 0 for h in facets)


def interior_contains(description, v) -> bool:
    """Relative interior: on the span, strictly inside every facet."""
    eqs, facets = description
    return all(dot(e, v) == 0 for e in eqs) and all(dot(h, v) > 0 for h in facets)


def is_pointed(description, ambient: int) -> bool:
    eqs, facets = description
    return rank([list(e) for e in eqs] + [list(h) for h in facets]) == ambient


def positive_functional(description):
    """Integer functional strictly positive on the nonzero points of a pointed cone."""
    _, facets = description
    if not facets:
        return None
    return tuple(sum(h[k] for h in facets) for k in range(len(facets[0])))


def as_fractions(v):
    return tuple(Fraction(x) for x in v)

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from symplex.errors import NotSubcone, PyramidSplitError, RankTooLarge, Simplicial, TooSmall
from symplex.geometry import (
    PolarizedTriple,
    RationalCone,
    cone_of,
    interior_monoid,
    is_c_divisible,
    pyramid_split,
    shipped_polarized_example,
    submonoid_select,
    validate_polarized,
)
from symplex.rings import Affine, CDivisibleTruncation, FreeMixed

QUADRANT = Affine(2, ((1, 0), (0, 1)))


def planar_member(rays, v):
    """Oracle for a 2-d pointed cone with two extreme rays: solve v = a r + b s."""
    (r1, r2), (s1, s2) = rays
    det = r1 * s2 - r2 * s1
    a = Fraction(v[0] * s2 - v[1] * s1, det)
    b = Fraction(r1 * v[1] - r2 * v[0], det)
    return a >= 0 and b >= 0


# -- cones ------------------------------------------------------------------------------


def test_quadrant_facets():
    C = cone_of(QUADRANT)
    assert sorted(C.facets) == [(0, 1), (1, 0)]
    assert C.dim == 2 and C.is_pointed
    assert C.contains((Fraction(1, 2), 3)) and not C.contains((-1, 0))
    assert C.interior_contains((1, 1)) and not C.interior_contains((1, 0))


def test_redundant_rays_pruned():
    C = RationalCone.generated_by(2, [(1, 0), (2, 1), (0, 3), (1, 1)])
    assert sorted(C.rays) == [(0, 1), (1, 0)]


def test_rank_limit():
    with pytest.raises(RankTooLarge):
        cone_of(Affine(7, tuple(tuple(int(i == k) for i in range(7)) for k in range(7))))


def test_line_is_not_pointed():
    C = cone_of(FreeMixed((True,)))
    assert not C.is_pointed and not C.facets


# -- submonoids ------------------------------------------------------------------------------


def test_interior_of_quadrant():
    M = interior_monoid(QUADRANT, 3)
    assert (1, 1) in M.gens
    assert all(g[0] >= 1 and g[1] >= 1 for g in M.gens)
    assert not M.contains((1, 0))
    assert M.approximation_bound == 3


def test_interior_of_a_group_is_itself():
    Z = FreeMixed((True,))
    assert interior_monoid(Z, 3) is Z


def test_submonoid_of_subcone():
    X = RationalCone(2, ((1, 1), (0, 1)))
    M = submonoid_select(QUADRANT, X, 4)
    assert sorted(M.gens) == [(0, 1), (1, 1)]
    assert M.contains((2, 5)) and not M.contains((1, 0))


def test_submonoid_rejects_non_subcone():
    with pytest.raises(NotSubcone):
        submonoid_select(QUADRANT, RationalCone(2, ((1, 0), (-1, 1))), 3)


def test_truncation_is_divisible_up_to_its_level():
    M = CDivisibleTruncation(Affine(1, ((1,),)), 2, 3)
    rep = is_c_divisible(M, 2, 4)
    assert rep.holds_on_sample
    assert all(Fraction(x).denominator <= 4 for w in rep.witnesses for x in w)
    assert rep.truncation_failures


def test_free_monoid_not_divisible():
    rep = is_c_divisible(Affine(1, ((1,),)), 2, 3)
    assert not rep.holds_on_sample
    assert (1,) in rep.failures


def test_integers_not_three_divisible():
    rep = is_c_divisible(Affine(1, ((1,), (-1,))), 3, 2)
    assert (1,) in rep.failures


# -- polarized triples -------------------------------------------------------------------


def test_shipped_example_passes():
    rep = validate_polarized(shipped_polarized_example())
    assert rep.passed
    assert set(rep.axioms) == {"i", "ii", "iii"}
    assert rep.summary()["verified_to_bound"] == 8


def test_ray_base_fails_dimension_axiom():
    # base of lower dimension than the cone of M
    T = PolarizedTriple(QUADRANT, (1, 0), RationalCone(2, ((0, 1),)), (1, 0))
    rep = validate_polarized(T)
    assert not rep.axioms["ii"].passed


def test_apex_inside_base_fails_first_axiom():
    T = PolarizedTriple(QUADRANT, (1, 1), RationalCone(2, ((1, 1), (0, 1))), (1, 1))
    rep = validate_polarized(T)
    assert not rep.axioms["i"].passed
    assert rep.axioms["i"].witness is not None


def test_non_normal_monoid_fails():
    M = Affine(2, ((2, 0), (3, 0), (0, 1)))  # gp(M) = Z^2 but (1, 0) is missing
    T = PolarizedTriple(M, (1, 0), RationalCone(2, ((1, 1), (0, 1))), (2, 0))
    assert not validate_polarized(T).axioms["i"].passed


# -- pyramid split -----------------------------------------------------------------------------


PLANAR = RationalCone(2, ((1, 0), (1, 1), (1, 2)))


def test_planar_split():
    split = pyramid_split(PLANAR)
    delta, gamma = split
    assert sorted(delta.rays) == [(1, 0), (1, 1)]
    assert sorted(gamma.rays) == [(1, 1), (1, 2)]
    assert split.face.rays == ((1, 1),)


@given(st.fractions(-40, 40, max_denominator=9), st.fractions(-40, 40, max_denominator=9))
def test_planar_split_membership(x, y):
    v = (x, y)
    delta, gamma = pyramid_split(PLANAR)
    assert PLANAR.contains(v) == planar_member(((1, 0), (1, 2)), v)
    assert delta.contains(v) == planar_member(((1, 0), (1, 1)), v)
    assert gamma.contains(v) == planar_member(((1, 1), (1, 2)), v)
    assert PLANAR.contains(v) == (delta.contains(v) or gamma.contains(v))


def test_simplex_split_over_first_axis():
    with pytest.raises(Simplicial) as info:
        pyramid_split(RationalCone(3, ((1, 0, 0), (0, 1, 0), (0, 0, 1))))
    split = info.value.split
    assert split.apex == (1, 0, 0)
    assert sorted(split.gamma.rays) == [(0, 0, 1), (0, 1, 0)]


def test_square_pyramid_split():
    G = RationalCone(3, ((1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1)))
    delta, gamma = pyramid_split(G)
    for v in [(0, 0, 1), (1, 0, 1), (Fraction(1, 3), Fraction(-1, 2), 1), (2, 2, 1)]:
        assert G.contains(v) == (delta.contains(v) or gamma.contains(v))
    assert delta.dim == 3 and gamma.dim == 3


def test_one_dimensional_cone_too_small():
    with pytest.raises(TooSmall):
        pyramid_split(RationalCone(2, ((1, 0),)))
    assert issubclass(TooSmall, PyramidSplitError)

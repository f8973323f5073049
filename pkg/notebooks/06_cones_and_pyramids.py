"""
Cones, polarized triples and pyramid splits
===========================================
"""

from fractions import Fraction

from symplex import Affine, RationalCone, cone_of, interior_monoid, pyramid_split, shipped_polarized_example, validate_polarized

M = Affine(2, ((1, 0), (1, 1), (1, 2)))
C = cone_of(M)
print(C.rays, C.facets)

# generators of the interior, up to generator sum 3
print(interior_monoid(Affine(2, ((1, 0), (0, 1))), 3).gens)

# the shipped polarized example and its three axioms
report = validate_polarized(shipped_polarized_example())
for name, result in report.axioms.items():
    print(name, result.passed, result.detail)

# cut the planar cone over its middle ray; cone_of(M) keeps only extreme
# rays, so the three listed rays are passed explicitly
P = RationalCone(2, ((1, 0), (1, 1), (1, 2)))
split = pyramid_split(P)
print(split.delta.rays, split.gamma.rays, split.face.rays)
v = (Fraction(3, 2), 1)
print(P.contains(v), split.delta.contains(v), split.gamma.contains(v))

# a four-sided pyramid
G = RationalCone(3, ((1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1)))
print(pyramid_split(G))

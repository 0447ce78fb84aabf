"""Walk through the locus calculus: centers, canonical intersections,
dimension counting, and the pair classification.

The ambient data: X of dimension 2 with one curve component q (dim 1) and
one point component p (dim 0), four labeled points.
"""

from wonderful import (
    Component,
    Diagonal,
    DLocus,
    GeometryConfig,
    Space,
    center_to_locus,
    codimension,
    contains,
    dimension,
    intersect,
    pair_position,
)

g = GeometryConfig(4, 2, (Component("q", 1), Component("p", 0)), Space.XD_BRACKET)
print("configuration:", g.dumps())

d_q12 = DLocus(4, 1, 0b0011)      # points 1,2 on the curve q
d_p12 = DLocus(4, 2, 0b0011)      # points 1,2 at the point p
delta12 = Diagonal.simple(4, 0b0011)
delta123 = Diagonal.simple(4, 0b0111)

print("\ncenters and their loci:")
for c in (d_q12, d_p12, delta12, delta123):
    lo = center_to_locus(g, c)
    print("  %-12s locus %-28s dim %d codim %d" % (c, lo, dimension(g, lo), codimension(g, lo)))

print("\nintersections accumulate pins and merge blocks:")
lo = intersect(g, center_to_locus(g, d_q12), center_to_locus(g, delta123))
print("  D_q{1,2} ^ Delta{1,2,3} =", lo, "dim", dimension(g, lo))
lo2 = intersect(g, center_to_locus(g, d_q12), center_to_locus(g, d_p12))
print("  D_q{1,2} ^ D_p{1,2}   =", lo2, "(components are disjoint)")

print("\na point component forces equality, hence containment in the diagonal:")
print("  D_p{1,2} inside Delta{1,2}?", contains(g, delta12, d_p12))
print("  D_q{1,2} inside Delta{1,2}?", contains(g, delta12, d_q12))

print("\npair classification (exact codimension arithmetic):")
pairs = [
    (delta12, Diagonal.simple(4, 0b1100)),
    (delta12, delta123),
    (d_q12, delta12),
    (d_p12, delta12),
    (d_q12, DLocus(4, 1, 0b1100)),
    (d_q12, d_p12),
]
for a, b in pairs:
    print("  %-12s vs %-12s -> %s" % (a, b, pair_position(g, a, b).value))

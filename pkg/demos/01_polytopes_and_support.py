#!/usr/bin/env python3
# Polyhedral sets in H-representation: membership, support functions,
# boundedness, and vertex enumeration.

import numpy as np

from tubesynth import box, contains_point, is_bounded, support_max, vertices
from tubesynth import PolyhedralSet, UnboundedSetError

# A set is the pair (A, b) describing {x : A x <= b}.  The box helper
# builds the 2n rows of an axis-aligned box.
B = box([-1, -1], [1, 1])
print("unit box rows:")
print(B.A)
print("offsets:", B.b)

print("\nmembership:")
for pt in ([0.0, 0.0], [1.0, 1.0], [1.2, 0.0]):
    print("  %s in box: %s" % (pt, contains_point(B, pt, tol=0.0)))

# The support function max a.x tells how far the set extends along a
# direction; on a box it is the weighted sum of the half-widths.
print("\nsupport values on the box:")
for a in ([1, 0], [2, -1], [1, 1]):
    print("  direction %s -> %g" % (a, support_max(B, a)))

# A triangle, and its vertices recovered by brute-force enumeration.
tri = PolyhedralSet([[-1, 0], [0, -1], [1, 1]], [0, 0, 1])
print("\ntriangle bounded:", is_bounded(tri))
print("triangle vertices:")
for v in vertices(tri):
    print("  ", v)

# Support is attained at a vertex: compare against the vertex maximum.
rng = np.random.default_rng(0)
a = rng.normal(size=2)
by_lp = support_max(tri, a)
by_vertices = max(float(a @ v) for v in vertices(tri))
print("\nrandom direction %s: support %.6f, vertex max %.6f" % (a, by_lp, by_vertices))

# Unbounded directions are reported as errors, never as values.
ray = PolyhedralSet([[-1.0]], [0.0])        # {x >= 0}
try:
    support_max(ray, [1.0])
except UnboundedSetError as e:
    print("\nopen ray along +x:", e)

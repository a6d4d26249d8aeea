"""
Half-space isoperimetry, Steiner symmetrization and Szego
=========================================================

In the upper half-space the density is x_n^2.  Half-balls centred on the
boundary are the extremals; symmetrizing along x_1 keeps the weighted
volume and does not raise the weighted boundary.
"""

import math

import numpy as np

from conekrahn import (HalfBall, IntervalUnion, Polygon, SlabDomain, halfspace_functionals,
                       halfspace_isoperimetric_check, steiner_symmetrize, symmetrization_check,
                       szego_check)
from conekrahn.rearrange import slab_boundary_weight, slab_volume_weight

for shape in (HalfBall(2, 1.0), HalfBall(3, 0.7), Polygon([[0, 0], [1, 0], [1, 1], [0, 1]]),
              Polygon([[-1, 0], [1, 0], [0, 1.5]])):
    r = halfspace_isoperimetric_check(shape)
    print(f"{type(shape).__name__:<9} boundary {r.lhs:.6f}  c(n) V^((n+1)/(n+2)) {r.rhs:.6f}  margin {r.margin:.2e}")

# A slab with two pieces per line: symmetrizing merges them into one
# centred interval of the same length.
t = np.linspace(0.05, 1.2, 24)
slab = SlabDomain.from_function(2, [t], lambda s: [(-1.0 - 0.2 * s, -0.4), (0.1 * s, 0.5 + 0.3 * s)])
sym = steiner_symmetrize(slab)
print("\nvolume  before/after:", slab_volume_weight(slab), slab_volume_weight(sym))
print("surface before/after:", slab_boundary_weight(slab).value, slab_boundary_weight(sym).value)
print(symmetrization_check(slab).line())

# Szego: among sets of equal f-mass, [0, R] minimises int_E g(F) f.
for E in (((0.0, 1.0),), ((0.2, 1.1),), ((0.0, 0.5), (0.8, 1.2))):
    r = szego_check(IntervalUnion(E), beta=2.0, gamma_=1.5)
    print(f"E = {E}: G(int f) = {r.lhs:.5f} <= {r.rhs:.5f}  equality: {r.details['equality']}")

# The closed form of a half-disc, for reference
fx = halfspace_functionals(HalfBall(2, 1.0))
print("\nhalf-disc:", fx.volume_weight, "= pi/8 =", math.pi / 8, ";", fx.perimeter_weight, "= pi/2")

"""
Sector eigenvalues on cones
===========================

A cone is fixed by its link: an arc of opening theta (plane wedges) or a
polar cap of radius theta0 (three dimensions).  Everything below follows
from the link eigenvalue mu.
"""

import math

import numpy as np

from conekrahn import cone, sector_eigenvalue, sector_eigenvalue_from_volume, sector_weighted_volume

# Wedges have mu = (pi / theta)^2, caps need a shooting solve.
cones = [("wedge pi/3", cone(interval=math.pi / 3)),
         ("wedge pi/2", cone(interval=math.pi / 2)),
         ("wedge pi", cone(interval=math.pi)),
         ("cap pi/4", cone(cap=math.pi / 4)),
         ("cap pi/3", cone(cap=math.pi / 3)),
         ("hemisphere", cone(cap=math.pi / 2))]

print(f"{'link':<12}{'mu':>12}{'alpha':>10}{'a':>10}{'lambda_1(S_1)':>16}")
for name, g in cones:
    print(f"{name:<12}{g.link.mu:>12.6f}{g.alpha:>10.5f}{g.a:>10.5f}{sector_eigenvalue(g, 1.0):>16.8f}")

# The sector eigenvalue can be read off either the radius or the weighted
# volume int w^2 dV; the two must agree.
g = cone(cap=math.pi / 3)
for r0 in (0.5, 1.0, 2.0):
    V = sector_weighted_volume(g, r0)
    print(f"r0 = {r0}: by radius {sector_eigenvalue(g, r0):.12f}, by volume {sector_eigenvalue_from_volume(g, V):.12f}")

# Narrow wedges push the Bessel order up and the eigenvalue with it.
for theta in np.linspace(0.2, math.pi, 6):
    g = cone(interval=theta)
    print(f"opening {theta:.3f}: a = {g.a:7.3f}, lambda_1 = {sector_eigenvalue(g, 1.0):10.3f}")

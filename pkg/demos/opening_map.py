"""
Opening the cone onto the half-space
====================================

The map r^kappa (grad psi, psi) sends the cone into the upper half-space
with the wall landing on {x_n = 0}.  The scans below measure the area
comparison constant, check injectivity on a grid and the power law of the
Jacobian.
"""

import math

import numpy as np

from conekrahn import cone
from conekrahn.geometry import area_ratio_scan, injectivity_scan, jacobian_scan, opening_map

for name, g in (("wedge pi/2", cone(interval=math.pi / 2)), ("cap pi/3", cone(cap=math.pi / 3)),
                ("hemisphere", cone(cap=math.pi / 2))):
    r = np.linspace(0.2, 2.0, 5)
    wall = opening_map(g, r, np.full_like(r, g.link.extent))
    print(f"{name}: kappa = {g.kappa:.4f}, wall heights {np.abs(wall[:, -1]).max():.1e}")
    for rep in (area_ratio_scan(g, 128), injectivity_scan(g, 32), jacobian_scan(g, 128)):
        print("   ", rep.line())
    print("    c_hat estimate:", area_ratio_scan(g, 128).details["c_hat_estimate"])

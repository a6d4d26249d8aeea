"""
Faber-Krahn on a cone: perturbed domains versus the sector bound
================================================================

Take star-shaped domains {r < R(theta)} in the quarter plane, compute their
first Dirichlet eigenvalue with the finite-volume solver and compare it with
the sector eigenvalue at the same weighted volume.
"""

import math

import numpy as np

from conekrahn import RadialGraphDomain, cone, domain_eigenvalue, rayleigh_lower_bound, weighted_volume

g = cone(interval=math.pi / 2)
ext = g.link.extent

# First the sector itself, where the bound should be attained.
sector = RadialGraphDomain.sector(g, 1.0)
res = domain_eigenvalue(sector, 128)
print("sector: lambda_num =", res.eigenvalue, " bound =", rayleigh_lower_bound(g, weighted_volume(sector)))
print("  levels (N, lambda):", res.details["levels"], " observed order", round(res.order, 3))

# Now bumps of growing size.  The gap grows roughly quadratically.
print(f"\n{'amp':>5}{'osc':>8}{'lambda_num':>14}{'bound':>14}{'rel gap':>10}")
for amp in (0.05, 0.1, 0.2, 0.3):
    d = RadialGraphDomain.from_function(g, lambda t: 1 + amp * np.cos(2 * math.pi * t / ext))
    lam = domain_eigenvalue(d, 128).eigenvalue
    bound = rayleigh_lower_bound(g, weighted_volume(d))
    print(f"{amp:>5}{d.relative_oscillation:>8.3f}{lam:>14.6f}{bound:>14.6f}{(lam - bound) / bound:>10.4f}")

"""
The one-dimensional comparison problem
======================================

Level sets of u / w reduce the Rayleigh quotient to a singular
Sturm-Liouville problem on (0, zeta_bar).  Its first eigenvalue has a
Bessel closed form; shooting from the singular end reproduces it.
"""

import math

import numpy as np

from conekrahn import (ComparisonProblem, bessel_comparison_solution, comparison_eigenvalue_closed_form,
                       comparison_eigenvalue_shooting, comparison_profile, first_bessel_zero)
from conekrahn.specfun import gamma

print(f"{'a':>5}{'zeta_bar':>10}{'closed form':>16}{'shooting':>16}{'rel diff':>10}")
for a in (1.2, 2.0, 5.0):
    for zb in (0.1, 1.0, 10.0):
        cf = comparison_eigenvalue_closed_form(a, zb)
        sh = comparison_eigenvalue_shooting(ComparisonProblem(a, zb))
        print(f"{a:>5}{zb:>10}{cf:>16.10f}{sh:>16.10f}{abs(cf - sh) / cf:>10.1e}")

# Multiplying by (2a+2)^((2a+1)/(a+1)) at the sector volume gives back j_a^2.
a = 2.0
zb = 1 / (2 * a + 2)
print("\nscaled lambda* =", (2 * a + 2) ** ((2 * a + 1) / (a + 1)) * comparison_eigenvalue_closed_form(a, zb),
      " j_a^2 =", first_bessel_zero(a) ** 2)

# The shooting profile is the Bessel solution up to its value at zeta = 0.
lam = comparison_eigenvalue_closed_form(a, 1.0)
z = np.linspace(0.01, 1.0, 6)
amp = (math.sqrt(lam) * (a + 1)) ** a / gamma(a + 1)
for zz, s, b in zip(z, comparison_profile(ComparisonProblem(a, 1.0), lam, z), bessel_comparison_solution(a, lam, z) / amp):
    print(f"zeta {zz:.3f}: shooting {s:+.10f}  Bessel {b:+.10f}")

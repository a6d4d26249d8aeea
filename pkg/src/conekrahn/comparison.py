"""The one-dimensional comparison problem and the end-to-end eigenvalue bound.

Level sets of v = u / w, parametrised by their weighted volume zeta, lead to
the singular Sturm-Liouville problem

    (zeta^(2p) t')' + lam t = 0,   t(zeta_bar) = 0,   zeta^(2p) t' -> 0 at 0,

with p = (2a+1)/(2a+2).  Its least eigenvalue is
lam* = zeta_bar^(-1/(a+1)) j_a^2 / (2a+2)^2, solved by
t = zeta^q J_a((2a+2) sqrt(lam) zeta^m) with q = (1-2p)/2, m = 1-p.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from .eigensolver import SpectralResult, domain_eigenvalue
from .geometry import RadialGraphDomain, weighted_volume
from .report import VerificationReport, timed
from .specfun import bessel_j, first_bessel_zero
from .weight import ConeGeometry

__all__ = [
    "ComparisonProblem",
    "ShootingFailure",
    "comparison_eigenvalue_closed_form",
    "comparison_eigenvalue_shooting",
    "comparison_profile",
    "bessel_comparison_solution",
    "comparison_ode_residual",
    "rayleigh_lower_bound",
    "verify_main_theorem",
]


class ShootingFailure(RuntimeError):
    pass


def _order(geom_or_a) -> float:
    a = geom_or_a.a if isinstance(geom_or_a, ConeGeometry) else float(geom_or_a)
    if not (a > 0 and math.isfinite(a)):
        raise ValueError("Bessel order a must be positive")
    return a


@dataclass(frozen=True)
class ComparisonProblem:
    a: float
    zeta_bar: float

    def __post_init__(self):
        _order(self.a)
        if not (self.zeta_bar > 0 and math.isfinite(self.zeta_bar)):
            raise ValueError("zeta_bar must be positive")

    @classmethod
    def from_geometry(cls, geom: ConeGeometry, zeta_bar: float) -> "ComparisonProblem":
        return cls(geom.a, zeta_bar)

    @property
    def p(self) -> float:
        return (2 * self.a + 1) / (2 * self.a + 2)

    @property
    def q(self) -> float:
        return (1 - 2 * self.p) / 2

    @property
    def m(self) -> float:
        return 1 - self.p

    @property
    def b(self) -> float:
        return self.a


def comparison_eigenvalue_closed_form(geom, zeta_bar: float) -> float:
    """lam* = zeta_bar^(-1/(a+1)) j_a^2 / (2a+2)^2; ``geom`` may also be the order a."""
    a = _order(geom)
    if not zeta_bar > 0:
        raise ValueError("zeta_bar must be positive")
    j = first_bessel_zero(a)
    return zeta_bar ** (-1.0 / (a + 1)) * j * j / (2 * a + 2) ** 2


# ---------------------------------------------------------------------------
# shooting
#
# In rho = zeta^m the flux z = zeta^(2p) t' equals m rho^(2a+1) t_rho and the
# equation becomes (rho^(2a+1) t_rho)' + k^2 rho^(2a+1) t = 0, k = sqrt(lam)/m,
# whose origin is a regular singular point.  The start uses the series
# t = 1 - lam zeta^s / s + lam^2 zeta^(2s) / (2 s^2 (1+s)),  s = 2 - 2p,
# which is the same expansion written in rho^2 = zeta^s.


def _series(a, k, rho):
    c1 = -k * k / (4 * (a + 1))
    c2 = k**4 / (32 * (a + 1) * (a + 2))
    t = 1 + c1 * rho**2 + c2 * rho**4
    g = rho ** (2 * a + 1) * (2 * c1 * rho + 4 * c2 * rho**3)  # rho^(2a+1) t_rho
    return t, g


def _shoot(problem: ComparisonProblem, lam: float, rho_end: float, dense: bool = False):
    a = problem.a
    k = math.sqrt(lam) / problem.m
    # third series term ~ (k rho)^6 / (384 (a+1)(a+2)(a+3)); keep it below 1e-12
    rho0 = min(1e-2 / k, 0.5 * rho_end)
    t0, g0 = _series(a, k, rho0)
    e = 2 * a + 1

    def rhs(rho, y):
        return (y[1] / rho**e, -k * k * rho**e * y[0])

    sol = solve_ivp(rhs, (rho0, rho_end), (t0, g0), method="DOP853",
                    rtol=1e-12, atol=1e-14, dense_output=dense)
    if not sol.success:
        raise ShootingFailure(sol.message)
    return sol


def comparison_eigenvalue_shooting(problem: ComparisonProblem, tol: float = 1e-10) -> float:
    """Least eigenvalue by shooting from the singular end and bracketing t(zeta_bar) = 0."""
    if not tol >= 1e-10:
        raise ValueError("tol must be >= 1e-10")
    m = problem.m
    rho_end = problem.zeta_bar**m

    def lam_of(x):  # x = k rho_end
        return (x * m / rho_end) ** 2

    def f(lam):
        return _shoot(problem, lam, rho_end).y[0, -1]

    x = 0.5
    lo, f_lo = lam_of(x), f(lam_of(x))
    if f_lo <= 0:
        raise ShootingFailure("shooting function not positive at the start of the scan")
    for _ in range(400):
        x += 0.25
        hi = lam_of(x)
        f_hi = f(hi)
        if f_hi <= 0:
            break
        lo, f_lo = hi, f_hi
    else:
        raise ShootingFailure("no sign change in the scan window")
    return brentq(f, lo, hi, xtol=1e-300, rtol=max(tol * 1e-2, 4e-16), maxiter=200)


def comparison_profile(problem: ComparisonProblem, lam: float, zeta) -> np.ndarray:
    """Shooting solution with t(0) = 1 sampled at ``zeta`` (all > 0)."""
    z = np.atleast_1d(np.asarray(zeta, dtype=float))
    if np.any(z <= 0):
        raise ValueError("zeta must be positive")
    rho = z**problem.m
    sol = _shoot(problem, lam, float(rho.max()), dense=True)
    rho0 = sol.t[0]
    out = np.empty_like(rho)
    small = rho < rho0
    out[small] = _series(problem.a, math.sqrt(lam) / problem.m, rho[small])[0]
    out[~small] = sol.sol(rho[~small])[0]
    return out


def bessel_comparison_solution(geom, lambda_star: float, zeta):
    """t(zeta) = zeta^q J_a((2a+2) sqrt(lam*) zeta^(1/(2a+2))); ``geom`` may be the order a."""
    a = _order(geom)
    z = np.asarray(zeta, dtype=float)
    if np.any(z <= 0):
        raise ValueError("zeta must be positive")
    q = -a / (2 * a + 2)
    out = z**q * np.asarray(bessel_j(a, (2 * a + 2) * math.sqrt(lambda_star) * z ** (1 / (2 * a + 2))))
    return out if np.ndim(out) else float(out)


def comparison_ode_residual(geom, lam: float, t, zeta: float, h: float = 3e-3) -> float:
    """(zeta^(2p) t')' + lam t at zeta by Richardson-combined central differences (step h * zeta)."""
    a = _order(geom)
    p = (2 * a + 1) / (2 * a + 2)

    def flux_derivative(step):
        def flux(x, s):
            return x ** (2 * p) * (t(x + s) - t(x - s)) / (2 * s)

        return (flux(zeta + step, step) - flux(zeta - step, step)) / (2 * step)

    s = h * zeta
    d = (4 * flux_derivative(s / 2) - flux_derivative(s)) / 3
    return float(d + lam * t(zeta))


def rayleigh_lower_bound(geom, V: float) -> float:
    """(2a+2)^((2a+1)/(a+1)) lam*(V): the eigenvalue of the sector with weighted volume V."""
    a = _order(geom)
    if not V > 0:
        raise ValueError("weighted volume must be positive")
    return (2 * a + 2) ** ((2 * a + 1) / (a + 1)) * comparison_eigenvalue_closed_form(a, V)


def verify_main_theorem(domain: RadialGraphDomain, resolution: int = 256, *,
                        budget: float = 0.02, oscillation_threshold: float = 0.2,
                        spectral: SpectralResult | None = None) -> VerificationReport:
    """lambda_1(domain) >= the sector eigenvalue at equal weighted volume.

    ``budget`` is the relative numerical allowance.  Sectors must land within
    it; profiles oscillating by at least ``oscillation_threshold`` must clear
    it.
    """
    with timed() as clock:
        V = weighted_volume(domain)
        bound = rayleigh_lower_bound(domain.geom, V)
        res = spectral if spectral is not None else domain_eigenvalue(domain, resolution)
        lam = res.eigenvalue
    tol = budget * bound
    margin = lam - bound
    osc = domain.relative_oscillation
    cond = {}
    if domain.is_sector or osc < 1e-12:
        cond["sector_equality"] = abs(margin) <= tol
    if osc >= oscillation_threshold:
        cond["strict_beyond_budget"] = margin > tol
    return VerificationReport(
        "main_theorem", "faber-krahn-cone-matched-volume", lam, bound, margin, tol,
        resolution=res.resolution, wall_time=clock["elapsed"],
        details={
            "weighted_volume": V,
            "relative_oscillation": osc,
            "base_eigenvalue": res.details.get("base_eigenvalue", lam),
            "order": res.order,
            "relative_margin": margin / bound,
            "conditions": cond,
        },
    )

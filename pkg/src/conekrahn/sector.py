"""Closed-form first Dirichlet eigenvalue of a sector of the cone."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .specfun import bessel_j, first_bessel_zero
from .weight import ConeGeometry, sector_radius_for_volume

__all__ = [
    "SectorSpectrum",
    "sector_spectrum",
    "sector_eigenvalue",
    "sector_eigenvalue_from_volume",
    "sector_ode_residual",
    "radial_profile",
]


def sector_eigenvalue(geom: ConeGeometry, r0: float) -> float:
    """lambda_1 of the sector of radius r0: j_a^2 / r0^2."""
    if not r0 > 0:
        raise ValueError("r0 must be positive")
    j = first_bessel_zero(geom.a)
    return j * j / (r0 * r0)


def sector_eigenvalue_from_volume(geom: ConeGeometry, volume: float) -> float:
    """Same eigenvalue expressed through the weighted volume V of the sector."""
    if not volume > 0:
        raise ValueError("weighted volume must be positive")
    j = first_bessel_zero(geom.a)
    return ((2 * geom.a + 2) * volume) ** (-1.0 / (geom.a + 1)) * j * j


def radial_profile(geom: ConeGeometry, lam: float):
    """f(r) = r^((2-n)/2) J_a(sqrt(lam) r), the radial factor of a separated solution."""
    q = (2 - geom.n) / 2
    k = math.sqrt(lam)

    def f(r):
        r = np.asarray(r, dtype=float)
        return r**q * np.asarray(bessel_j(geom.a, k * r))

    return f


def sector_ode_residual(geom: ConeGeometry, lam: float, f, r: float, *,
                        h: float = 1e-3, df=None, d2f=None) -> float:
    """r^2 f'' + (n-1) r f' + (lam r^2 - mu) f at r.

    Derivatives not supplied are taken by central differences at steps h and
    h/2 combined by Richardson extrapolation.
    """
    n, mu = geom.n, geom.link.mu
    if df is None or d2f is None:
        def cd(step):
            fp, f0, fm = f(r + step), f(r), f(r - step)
            return (fp - fm) / (2 * step), (fp - 2 * f0 + fm) / (step * step)

        d1h, d2h = cd(h)
        d1q, d2q = cd(h / 2)
        d1 = (4 * d1q - d1h) / 3 if df is None else df(r)
        d2 = (4 * d2q - d2h) / 3 if d2f is None else d2f(r)
    else:
        d1, d2 = df(r), d2f(r)
    return float(r * r * d2 + (n - 1) * r * d1 + (lam * r * r - mu) * f(r))


@dataclass(frozen=True, eq=False)
class SectorSpectrum:
    geom: ConeGeometry
    r0: float
    lambda1: float
    j_a: float

    def eigenfunction(self, r, theta):
        """u = r^((2-n)/2) J_a(j_a r / r0) psi(theta), zero at r = r0 and on the wall."""
        r = np.asarray(r, dtype=float)
        q = (2 - self.geom.n) / 2
        x = np.clip(self.j_a * r / self.r0, 0.0, None)
        with np.errstate(divide="ignore", invalid="ignore"):
            radial = np.where(r > 0, np.where(r > 0, r, 1.0) ** q * np.asarray(bessel_j(self.geom.a, x)), 0.0)
        out = radial * np.asarray(self.geom.link.psi(theta))
        return out if np.ndim(out) else float(out)


def sector_spectrum(geom: ConeGeometry, r0: float = 1.0) -> SectorSpectrum:
    j = first_bessel_zero(geom.a)
    return SectorSpectrum(geom, float(r0), j * j / (r0 * r0), j)


def sector_radius(geom: ConeGeometry, volume: float) -> float:
    return sector_radius_for_volume(geom, volume)

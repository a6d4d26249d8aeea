"""Cone geometry and the harmonic weight w(r, theta) = r**alpha * psi(theta)."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .link import LinkSpec, LinkSpectrum, link_spectrum

__all__ = [
    "ConeGeometry",
    "alpha_exponent",
    "cone",
    "weight_eval",
    "sector_weighted_volume",
    "sector_radius_for_volume",
]


def alpha_exponent(n: int, mu: float) -> float:
    """Exponent of the positive harmonic function r**alpha psi in the cone."""
    if not (mu > 0 and math.isfinite(mu)):
        raise ValueError(f"link eigenvalue must be positive, got {mu!r}")
    h = (2 - n) / 2
    return h + math.sqrt(h * h + mu)


@dataclass(frozen=True, eq=False)
class ConeGeometry:
    n: int
    link: LinkSpectrum
    alpha: float
    a: float

    def __post_init__(self):
        if self.n != self.link.n:
            raise ValueError("dimension does not match the link")
        half = (self.n - 2) / 2
        if abs(self.a - (self.alpha + half)) > 1e-12 * max(1.0, self.a):
            raise ValueError("a != alpha + (n-2)/2")
        if abs(self.a**2 - (self.link.mu + half * half)) > 1e-12 * max(1.0, self.a**2):
            raise ValueError("a^2 != mu + ((n-2)/2)^2")
        if abs(self.link.normalization() - 1.0) > 1e-10:
            raise ValueError("link eigenfunction is not L2-normalised")

    @classmethod
    def from_link(cls, link: LinkSpectrum) -> "ConeGeometry":
        alpha = alpha_exponent(link.n, link.mu)
        return cls(link.n, link, alpha, alpha + (link.n - 2) / 2)

    @property
    def kappa(self) -> float:
        """Radial exponent (2 alpha + n - 1) / (n + 1) of the opening map."""
        return (2 * self.alpha + self.n - 1) / (self.n + 1)


def cone(*, interval: float | None = None, cap: float | None = None,
         resolution: int = 512) -> ConeGeometry:
    """Convenience constructor: ``cone(interval=pi/2)`` or ``cone(cap=pi/3)``."""
    if (interval is None) == (cap is None):
        raise ValueError("give exactly one of interval= or cap=")
    spec = LinkSpec.interval(interval) if interval is not None else LinkSpec.cap(cap)
    return ConeGeometry.from_link(link_spectrum(spec, resolution))


def weight_eval(geom: ConeGeometry, r, theta):
    """w = r**alpha psi(theta); zero on the wall and at the apex."""
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise ValueError("r must be >= 0")
    out = r**geom.alpha * np.asarray(geom.link.psi(theta))
    return out if np.ndim(out) else float(out)


def sector_weighted_volume(geom: ConeGeometry, r0: float) -> float:
    """int over the sector of radius r0 of w^2 dV = r0^(2a+2) / (2a+2)."""
    if not r0 > 0:
        raise ValueError("r0 must be positive")
    p = 2 * geom.a + 2
    return r0**p / p


def sector_radius_for_volume(geom: ConeGeometry, volume: float) -> float:
    if not volume > 0:
        raise ValueError("weighted volume must be positive")
    p = 2 * geom.a + 2
    return (p * volume) ** (1.0 / p)

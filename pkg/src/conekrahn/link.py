"""First Dirichlet eigenpair of the cone's cross-section (the link).

Two links are supported: an interval ``(0, opening)`` on the circle (n = 2)
and a geodesic polar cap of radius ``theta0`` on S^2 (n = 3).  The interval
is solved in closed form; the cap by shooting on the zonal Legendre-type
equation ``(sin t psi')' + mu sin t psi = 0``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.interpolate import CubicHermiteSpline
from scipy.optimize import brentq

from .report import VerificationReport

__all__ = [
    "LinkSpec",
    "LinkSpectrum",
    "ShootingError",
    "link_spectrum",
    "mu_lower_bound_check",
    "log_concavity_check",
    "shoot_cap",
]


class ShootingError(RuntimeError):
    pass


@dataclass(frozen=True)
class LinkSpec:
    """``kind`` is ``"interval"`` (n = 2) or ``"cap"`` (n = 3); ``angle`` in radians."""

    kind: str
    angle: float

    def __post_init__(self):
        if self.kind not in ("interval", "cap"):
            raise ValueError(f"unknown link kind {self.kind!r}")
        a = float(self.angle)
        if not math.isfinite(a) or a <= 0:
            raise ValueError("link angle must be positive")
        limit = math.pi if self.kind == "interval" else math.pi / 2
        if a > limit * (1 + 1e-12):
            raise ValueError(
                f"{self.kind} angle {a} leaves the closed upper hemisphere (max {limit})"
            )

    @classmethod
    def interval(cls, opening: float) -> "LinkSpec":
        return cls("interval", opening)

    @classmethod
    def cap(cls, theta0: float) -> "LinkSpec":
        return cls("cap", theta0)

    @property
    def n(self) -> int:
        return 2 if self.kind == "interval" else 3

    @property
    def boundary_case(self) -> bool:
        """True for the hemisphere limits (opening = pi, theta0 = pi/2)."""
        limit = math.pi if self.kind == "interval" else math.pi / 2
        return abs(self.angle - limit) <= 1e-12 * limit


@dataclass(frozen=True, eq=False)
class LinkSpectrum:
    """Normalised first eigenpair of the link.

    ``theta``/``psi_samples``/``dpsi_samples`` hold the grid data; ``psi``,
    ``dpsi`` and ``d2psi`` evaluate off-grid (closed form for the interval,
    cubic Hermite interpolation for the cap).
    """

    spec: LinkSpec
    mu: float
    theta: np.ndarray
    psi_samples: np.ndarray
    dpsi_samples: np.ndarray
    scale: float = 1.0
    details: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.spec.n

    @property
    def extent(self) -> float:
        return float(self.spec.angle)

    @property
    def boundary_case(self) -> bool:
        return self.spec.boundary_case

    @cached_property
    def _spline(self):
        return CubicHermiteSpline(self.theta, self.psi_samples, self.dpsi_samples)

    def _check(self, theta):
        t = np.asarray(theta, dtype=float)
        tol = 1e-12 * self.extent
        if np.any(t < -tol) or np.any(t > self.extent + tol):
            raise ValueError("theta outside the closed link")
        return np.clip(t, 0.0, self.extent)

    def psi(self, theta):
        t = self._check(theta)
        if self.spec.kind == "interval":
            out = self.scale * np.sin(math.pi * t / self.extent)
        else:
            out = self._spline(t)
        return out if np.ndim(out) else float(out)

    def dpsi(self, theta):
        t = self._check(theta)
        if self.spec.kind == "interval":
            k = math.pi / self.extent
            out = self.scale * k * np.cos(k * t)
        else:
            out = self._spline(t, 1)
        return out if np.ndim(out) else float(out)

    def d2psi(self, theta):
        """Second derivative taken from the eigenvalue equation itself."""
        t = self._check(theta)
        psi = np.asarray(self.psi(t))
        if self.spec.kind == "interval":
            out = -self.mu * psi
        else:
            dpsi = np.asarray(self.dpsi(t))
            with np.errstate(divide="ignore", invalid="ignore"):
                out = np.where(t > 0, -np.cos(t) / np.sin(np.where(t > 0, t, 1.0)) * dpsi - self.mu * psi,
                               -0.5 * self.mu * psi)
        return out if np.ndim(out) else float(out)

    def measure(self, theta):
        """Density of dA on the link in the polar angle."""
        t = np.asarray(theta, dtype=float)
        if self.n == 2:
            return np.ones_like(t)
        return 2.0 * math.pi * np.sin(t)

    def normalization(self, panels: int | None = None) -> float:
        """int_link psi^2 dA, by Gauss-Legendre on each grid interval."""
        nodes, weights = np.polynomial.legendre.leggauss(8)
        edges = self.theta if panels is None else np.linspace(0, self.extent, panels + 1)
        a, b = edges[:-1, None], edges[1:, None]
        t = 0.5 * (a + b) + 0.5 * (b - a) * nodes
        w = 0.5 * (b - a) * weights
        t = t.ravel()
        return float(np.sum(w.ravel() * np.asarray(self.psi(t)) ** 2 * self.measure(t)))


# ---------------------------------------------------------------------------
# cap shooting


def _cap_rhs(t, psi, z, mu):
    # psi' = z / sin t ; z' = -mu sin t psi   with z = sin(t) psi'
    s = math.sin(t)
    return z / s, -mu * s * psi


def _series_start(h, mu):
    c2 = -mu / 4.0
    c4 = mu * mu / 64.0 - mu / 96.0
    psi = 1.0 + c2 * h * h + c4 * h**4
    dpsi = 2 * c2 * h + 4 * c4 * h**3
    return psi, math.sin(h) * dpsi


def shoot_cap(mu: float, theta0: float, steps: int, *, record: bool = False):
    """Integrate the cap equation from the pole with psi(0) = 1.

    The first step is taken with the regular series at the pole, the rest with
    classical RK4.  Returns psi(theta0), or the full (theta, psi, dpsi) arrays
    when ``record`` is set.
    """
    h = theta0 / steps
    psi, z = _series_start(h, mu)
    if record:
        th = np.linspace(0.0, theta0, steps + 1)
        ps = np.empty(steps + 1)
        dp = np.empty(steps + 1)
        ps[0], dp[0] = 1.0, 0.0
        ps[1], dp[1] = psi, z / math.sin(h)
    t = h
    for i in range(1, steps):
        k1p, k1z = _cap_rhs(t, psi, z, mu)
        k2p, k2z = _cap_rhs(t + h / 2, psi + h / 2 * k1p, z + h / 2 * k1z, mu)
        k3p, k3z = _cap_rhs(t + h / 2, psi + h / 2 * k2p, z + h / 2 * k2z, mu)
        k4p, k4z = _cap_rhs(t + h, psi + h * k3p, z + h * k3z, mu)
        psi += h / 6 * (k1p + 2 * k2p + 2 * k3p + k4p)
        z += h / 6 * (k1z + 2 * k2z + 2 * k3z + k4z)
        t = (i + 1) * h
        if record:
            ps[i + 1] = psi
            dp[i + 1] = z / math.sin(t)
    if record:
        return th, ps, dp
    return psi


def _cap_eigenvalue(theta0: float, steps: int, tol: float = 1e-13) -> float:
    # mu >= n - 1 = 2 on caps inside the closed hemisphere; start below it so
    # the hemisphere itself (mu = 2 exactly) is bracketed too
    lo = 1.5
    f_lo = shoot_cap(lo, theta0, steps)
    if f_lo <= 0:
        raise ShootingError("shooting function not positive below mu = n - 1")
    hi = lo
    step = 1.0
    for _ in range(400):
        hi = lo + step
        f_hi = shoot_cap(hi, theta0, steps)
        if f_hi <= 0:
            break
        lo, f_lo = hi, f_hi
        step *= 1.25
    else:
        raise ShootingError("no sign change of the shooting function")
    return brentq(lambda m: shoot_cap(m, theta0, steps), lo, hi, xtol=tol, rtol=1e-15, maxiter=200)


def link_spectrum(spec: LinkSpec, resolution: int = 512) -> LinkSpectrum:
    """First Dirichlet eigenpair of ``spec`` sampled on ``resolution + 1`` points."""
    if resolution < 64:
        raise ValueError("resolution must be >= 64")
    theta = np.linspace(0.0, spec.angle, resolution + 1)
    if spec.kind == "interval":
        k = math.pi / spec.angle
        c = math.sqrt(2.0 / spec.angle)
        return LinkSpectrum(
            spec, k * k, theta, c * np.sin(k * theta), c * k * np.cos(k * theta), scale=c,
            details={"method": "closed form"},
        )

    mu_coarse = _cap_eigenvalue(spec.angle, resolution)
    mu_fine = _cap_eigenvalue(spec.angle, 2 * resolution)
    mu = mu_fine + (mu_fine - mu_coarse) / 15.0  # RK4: error ~ h^4
    th, ps, dp = shoot_cap(mu, spec.angle, resolution, record=True)
    ps[-1] = 0.0
    raw = LinkSpectrum(spec, mu, th, ps, dp)
    c = 1.0 / math.sqrt(raw.normalization())
    return LinkSpectrum(
        spec, mu, th, c * ps, c * dp, scale=c,
        details={
            "method": "shooting",
            "mu_coarse": mu_coarse,
            "mu_fine": mu_fine,
            "resolutions": [resolution, 2 * resolution],
        },
    )


# ---------------------------------------------------------------------------
# checks


def mu_lower_bound_check(spectrum: LinkSpectrum) -> VerificationReport:
    """mu > n - 1 for links strictly inside the upper hemisphere."""
    name, anchor = "link_mu_lower_bound", "link-eigenvalue-exceeds-n-minus-1"
    if spectrum.boundary_case:
        return VerificationReport.skip(name, anchor, "hemisphere boundary case: mu = n - 1")
    n = spectrum.n
    return VerificationReport(
        name, anchor, spectrum.mu, float(n - 1), spectrum.mu - (n - 1), 0.0,
        details={"conditions": {"strict": spectrum.mu > n - 1}},
    )


def log_concavity_check(spectrum: LinkSpectrum, tol: float = 1e-9) -> VerificationReport:
    """Second differences of log psi are <= tol at every interior sample."""
    t = spectrum.theta
    if len(t) - 2 < 128:
        raise ValueError("need at least 128 interior samples")
    h = t[1] - t[0]
    psi = spectrum.psi_samples
    logp = np.log(psi[:-1]) if spectrum.n == 3 else np.log(psi[1:-1])
    if spectrum.n == 3:
        # pole is interior: reflect psi(-h) = psi(h)
        logp = np.concatenate([[logp[1]], logp])
    second = (logp[2:] - 2 * logp[1:-1] + logp[:-2]) / (h * h)
    worst = float(np.max(second))
    conditions = {}
    if spectrum.n == 3:
        # the azimuthal Hessian entry cot(t) (log psi)' must also be <= 0
        inner = slice(1, -1)
        azim = np.cos(t[inner]) / np.sin(t[inner]) * spectrum.dpsi_samples[inner] / psi[inner]
        conditions["azimuthal_nonpositive"] = bool(np.max(azim) <= tol)
    return VerificationReport(
        "link_log_concavity", "log-concave-link-eigenfunction",
        0.0, worst, -worst, tol,
        resolution=len(t) - 1,
        details={"max_second_difference": worst, "conditions": conditions},
    )

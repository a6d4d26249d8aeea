"""Domains in the cone and in the half-space, and their weighted functionals.

Cone domains are radial graphs D = {(r, theta): r < R(theta)} over the link.
Volume and boundary functionals use the weight w^2; half-space domains use
x_n^2.  The opening map carries the cone into the upper half-space.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.spatial import cKDTree

from .report import VerificationReport
from .specfun import gamma
from .weight import ConeGeometry

__all__ = [
    "RadialGraphDomain",
    "WeightedFunctionals",
    "Polygon",
    "HalfBall",
    "cone_functionals",
    "weighted_volume",
    "weighted_perimeter",
    "isoperimetric_check",
    "slice_parameters",
    "slice_functional",
    "holder_check",
    "halfspace_functionals",
    "halfspace_isoperimetric_constant",
    "halfspace_constant_trig_form",
    "halfspace_isoperimetric_check",
    "sphere_area",
    "euler_lagrange_residual",
    "opening_map",
    "opening_jacobian",
    "opening_det",
    "area_ratio",
    "area_ratio_scan",
    "injectivity_scan",
    "jacobian_scan",
]

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(8)


# ---------------------------------------------------------------------------
# cone domains


@dataclass(frozen=True, eq=False)
class RadialGraphDomain:
    """Star-shaped domain {r < R(theta)} over the whole link.

    The profile is given by samples on ``theta`` (covering the closed link)
    and interpolated by a cubic spline; ``R'`` is the spline derivative.
    """

    geom: ConeGeometry
    theta: np.ndarray
    R: np.ndarray
    is_sector: bool = False

    def __post_init__(self):
        th = np.asarray(self.theta, dtype=float)
        R = np.asarray(self.R, dtype=float)
        object.__setattr__(self, "theta", th)
        object.__setattr__(self, "R", R)
        if th.ndim != 1 or th.shape != R.shape or len(th) < 2:
            raise ValueError("theta and R must be 1-D arrays of equal length >= 2")
        if not (np.all(np.isfinite(th)) and np.all(np.isfinite(R))):
            raise ValueError("profile contains non-finite values")
        ext = self.geom.link.extent
        if abs(th[0]) > 1e-12 or abs(th[-1] - ext) > 1e-12 * ext or np.any(np.diff(th) <= 0):
            raise ValueError("profile theta must increase from 0 to the link extent")
        if np.any(R <= 0):
            raise ValueError("profile must be strictly positive")
        dense = np.linspace(0.0, ext, 20 * len(th) + 1)
        if np.min(self.radius(dense)) <= 0:
            raise ValueError("interpolated profile is not strictly positive")

    # construction -------------------------------------------------------
    @classmethod
    def sector(cls, geom: ConeGeometry, r0: float = 1.0) -> "RadialGraphDomain":
        if not r0 > 0:
            raise ValueError("r0 must be positive")
        th = np.linspace(0.0, geom.link.extent, 3)
        return cls(geom, th, np.full(3, float(r0)), is_sector=True)

    @classmethod
    def from_function(cls, geom: ConeGeometry, func, samples: int = 129) -> "RadialGraphDomain":
        th = np.linspace(0.0, geom.link.extent, samples)
        return cls(geom, th, np.asarray(func(th), dtype=float))

    def scaled(self, factor: float) -> "RadialGraphDomain":
        return RadialGraphDomain(self.geom, self.theta, self.R * factor, self.is_sector)

    # profile ------------------------------------------------------------
    @property
    def _spline(self):
        sp = self.__dict__.get("_sp")
        if sp is None:
            sp = CubicSpline(self.theta, self.R)
            self.__dict__["_sp"] = sp
        return sp

    def radius(self, theta):
        if self.is_sector:
            return np.full_like(np.asarray(theta, dtype=float), self.R[0])
        return self._spline(theta)

    def dradius(self, theta):
        if self.is_sector:
            return np.zeros_like(np.asarray(theta, dtype=float))
        return self._spline(theta, 1)

    @property
    def max_radius(self) -> float:
        dense = np.linspace(0.0, self.geom.link.extent, 20 * len(self.theta) + 1)
        return float(max(np.max(self.radius(dense)), np.max(self.R)))

    @property
    def relative_oscillation(self) -> float:
        """(max R - min R) / (max R + min R) of the interpolated profile."""
        dense = np.linspace(0.0, self.geom.link.extent, 20 * len(self.theta) + 1)
        v = self.radius(dense)
        return float((v.max() - v.min()) / (v.max() + v.min()))

    def to_dict(self) -> dict:
        return {"theta": self.theta.tolist(), "R": self.R.tolist()}


@dataclass
class WeightedFunctionals:
    volume_weight: float
    perimeter_weight: float
    resolution: tuple = ()
    volume_gap: float = 0.0
    perimeter_gap: float = 0.0
    converged: bool = False
    details: dict = field(default_factory=dict)


def _link_nodes(domain: RadialGraphDomain, resolution: int):
    """Composite Gauss-Legendre nodes/weights on the link, aligned to profile knots."""
    knots = domain.theta
    sub = max(1, int(math.ceil(resolution / (len(knots) - 1))))
    edges = np.concatenate(
        [np.linspace(knots[i], knots[i + 1], sub + 1)[:-1] for i in range(len(knots) - 1)]
        + [knots[-1:]]
    )
    a, b = edges[:-1, None], edges[1:, None]
    t = (0.5 * (a + b) + 0.5 * (b - a) * _GL_NODES).ravel()
    w = (0.5 * (b - a) * _GL_WEIGHTS).ravel()
    return t, w


def _volume_at(domain: RadialGraphDomain, resolution: int) -> float:
    g = domain.geom
    t, w = _link_nodes(domain, resolution)
    p = 2 * g.alpha + g.n  # = 2a + 2
    R = domain.radius(t)
    psi = np.asarray(g.link.psi(t))
    return float(np.sum(w * R**p / p * psi**2 * g.link.measure(t)))


def _perimeter_at(domain: RadialGraphDomain, resolution: int) -> float:
    g = domain.geom
    t, w = _link_nodes(domain, resolution)
    R = domain.radius(t)
    dR = domain.dradius(t)
    psi = np.asarray(g.link.psi(t))
    line = np.sqrt(R * R + dR * dR)
    if g.n == 2:
        elem = line
    else:
        elem = 2.0 * math.pi * line * R * np.sin(t)
    # the wall carries no weight: psi vanishes there
    return float(np.sum(w * R ** (2 * g.alpha) * psi**2 * elem))


def cone_functionals(domain: RadialGraphDomain, resolution: int = 64,
                     tol: float = 1e-9) -> WeightedFunctionals:
    """Both weighted functionals at ``resolution`` and ``2*resolution`` panels."""
    v1, v2 = _volume_at(domain, resolution), _volume_at(domain, 2 * resolution)
    p1, p2 = _perimeter_at(domain, resolution), _perimeter_at(domain, 2 * resolution)
    vg, pg = abs(v2 - v1), abs(p2 - p1)
    return WeightedFunctionals(
        v2, p2, (resolution, 2 * resolution), vg, pg,
        converged=bool(vg <= tol * abs(v2) and pg <= tol * abs(p2)),
    )


def weighted_volume(domain: RadialGraphDomain, resolution: int = 64) -> float:
    """int_D w^2 dV (inner radial integral exact, outer composite Gauss-Legendre)."""
    return _volume_at(domain, 2 * resolution)


def weighted_perimeter(domain: RadialGraphDomain, resolution: int = 64) -> float:
    """int over the graph part of the boundary of w^2 dA."""
    return _perimeter_at(domain, 2 * resolution)


def isoperimetric_check(domain: RadialGraphDomain, resolution: int = 64,
                        tol: float = 1e-7) -> VerificationReport:
    """Boundary weight versus ((2a+2) V)^((2a+1)/(2a+2))."""
    a = domain.geom.a
    fx = cone_functionals(domain, resolution)
    rhs = ((2 * a + 2) * fx.volume_weight) ** ((2 * a + 1) / (2 * a + 2))
    osc = domain.relative_oscillation
    return VerificationReport.inequality(
        "weighted_isoperimetric", "weighted-isoperimetric-inequality",
        fx.perimeter_weight, rhs, tol * max(1.0, rhs),
        resolution=list(fx.resolution),
        details={
            "volume_weight": fx.volume_weight,
            "relative_deficit": (fx.perimeter_weight - rhs) / rhs,
            "quadrature_gap": max(fx.volume_gap, fx.perimeter_gap),
            "near_equality": bool(osc < 1e-8),
            "relative_oscillation": osc,
        },
    )


def slice_parameters(geom: ConeGeometry) -> tuple[float, float]:
    """(beta, gamma) turning the radial slice integral into int_D w^2 dV."""
    al, n = geom.alpha, geom.n
    return 2 * al + n - 1, (2 * al - 2) / ((2 * al + n) * (n + 1))


def slice_functional(domain: RadialGraphDomain, beta: float, gamma_: float,
                     resolution: int = 64) -> float:
    """int_link (int_{L_theta} r^beta dr)^(gamma+1) psi^2 dA with L_theta = (0, R(theta))."""
    if not beta > -1:
        raise ValueError("beta must exceed -1")
    if not gamma_ > 0:
        raise ValueError("gamma must be positive")
    g = domain.geom
    t, w = _link_nodes(domain, 2 * resolution)
    inner = domain.radius(t) ** (beta + 1) / (beta + 1)
    psi = np.asarray(g.link.psi(t))
    return float(np.sum(w * inner ** (gamma_ + 1) * psi**2 * g.link.measure(t)))


def holder_check(domain: RadialGraphDomain, resolution: int = 64,
                 tol: float = 1e-10) -> VerificationReport:
    """(int_D w^2 dV)^(gamma+1) <= slice functional, for the matched (beta, gamma)."""
    beta, gam = slice_parameters(domain.geom)
    V = weighted_volume(domain, resolution)
    S = slice_functional(domain, beta, gam, resolution)
    rhs = V ** (gam + 1)
    return VerificationReport.inequality(
        "radial_slice_holder", "holder-step-on-radial-slices", S, rhs, tol * max(1.0, rhs),
        resolution=resolution, details={"beta": beta, "gamma": gam},
    )


# ---------------------------------------------------------------------------
# half-space domains


@dataclass(frozen=True, eq=False)
class Polygon:
    """Simple polygon in the closed upper half-plane {y >= 0} (n = 2)."""

    vertices: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=float)
        object.__setattr__(self, "vertices", v)
        if v.ndim != 2 or v.shape[1] != 2 or len(v) < 3:
            raise ValueError("polygon needs an (m, 2) vertex array with m >= 3")
        if np.any(v[:, 1] < 0):
            raise ValueError("polygon leaves the upper half-plane")
        if _self_intersects(v):
            raise ValueError("polygon is self-intersecting")

    @property
    def n(self) -> int:
        return 2

    def translated(self, dx: float) -> "Polygon":
        return Polygon(self.vertices + np.array([dx, 0.0]))

    def scaled(self, s: float) -> "Polygon":
        return Polygon(self.vertices * s)


def _segments_cross(p1, p2, q1, q2) -> bool:
    def orient(a, b, c):
        return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])

    d1, d2 = orient(q1, q2, p1), orient(q1, q2, p2)
    d3, d4 = orient(p1, p2, q1), orient(p1, p2, q2)
    return (d1 * d2 < 0) and (d3 * d4 < 0)


def _self_intersects(v: np.ndarray) -> bool:
    m = len(v)
    for i in range(m):
        p1, p2 = v[i], v[(i + 1) % m]
        for j in range(i + 2, m):
            if i == 0 and j == m - 1:
                continue
            if _segments_cross(p1, p2, v[j], v[(j + 1) % m]):
                return True
    return False


@dataclass(frozen=True)
class HalfBall:
    """Half-ball of radius ``radius`` centred on {x_n = 0} (n = 2 or 3)."""

    n: int
    radius: float
    center: float = 0.0

    def __post_init__(self):
        if self.n not in (2, 3):
            raise ValueError("half-balls implemented for n = 2, 3")
        if not self.radius > 0:
            raise ValueError("radius must be positive")


def _polygon_functionals(poly: Polygon, q: int = 2) -> tuple[float, float]:
    v = poly.vertices
    x0, y0 = v[:, 0], v[:, 1]
    x1, y1 = np.roll(x0, -1), np.roll(y0, -1)
    dx, dy = x1 - x0, y1 - y0
    # volume: Green's theorem with Q = x y^q / ... ; integrate x(s) y(s)^q dy exactly
    nodes, weights = np.polynomial.legendre.leggauss(q + 2)
    s = 0.5 * (nodes + 1.0)
    ws = 0.5 * weights
    xs = x0[:, None] + s * dx[:, None]
    ys = y0[:, None] + s * dy[:, None]
    vol = abs(float(np.sum(np.sum(ws * xs * ys**q, axis=1) * dy)))
    length = np.hypot(dx, dy)
    per = float(np.sum(length * np.sum(ws * ys**q, axis=1)))
    return vol, per


def halfspace_functionals(domain, resolution: int | None = None, q: int = 2) -> WeightedFunctionals:
    """int x_n^q dV and int_boundary x_n^q dA of a half-space domain.

    Polygons and half-balls are exact; slabs use the discrete graph model of
    :mod:`conekrahn.rearrange`.
    """
    if isinstance(domain, Polygon):
        vol, per = _polygon_functionals(domain, q)
        return WeightedFunctionals(vol, per, details={"method": "exact per-edge"}, converged=True)
    if isinstance(domain, HalfBall):
        if q != 2:
            raise ValueError("closed-form half-ball functionals implemented for q = 2")
        R, n = domain.radius, domain.n
        omega = sphere_area(n - 1)
        i2 = _trig_integral(n, 2)
        return WeightedFunctionals(
            omega * i2 * R ** (n + 2) / (n + 2), omega * i2 * R ** (n + 1),
            details={"method": "closed form"}, converged=True,
        )
    from .rearrange import SlabDomain, slab_boundary_weight, slab_volume_weight

    if isinstance(domain, SlabDomain):
        bw = slab_boundary_weight(domain, q=q)
        return WeightedFunctionals(
            slab_volume_weight(domain, q=q), bw.value,
            details={"method": "slab graph model", "excluded_base_measure": bw.excluded_measure},
        )
    raise TypeError(f"unsupported half-space domain {type(domain).__name__}")


def sphere_area(k: int) -> float:
    """Surface measure of the unit sphere S^(k-1) in R^k."""
    return 2.0 * math.pi ** (k / 2) / gamma(k / 2)


def _trig_integral(n: int, power: int) -> float:
    """int_0^(pi/2) sin^(n-2) x cos^power x dx, in closed form via the beta function."""
    p, q = (n - 1) / 2, (power + 1) / 2
    return 0.5 * gamma(p) * gamma(q) / gamma(p + q)


def halfspace_isoperimetric_constant(n: int) -> float:
    """Sharp constant c(n) with int_bdry x_n^2 dA >= c(n) (int x_n^2 dV)^((n+1)/(n+2)).

    Attained by half-balls centred on {x_n = 0}: for radius R the two sides
    are |S^(n-2)| I2 R^(n+1) and |S^(n-2)| I2 R^(n+2)/(n+2), where
    I2 = int_0^(pi/2) sin^(n-2) x cos^2 x dx.
    """
    if n not in (2, 3):
        raise ValueError("half-space constant implemented for n = 2, 3")
    m = sphere_area(n - 1) * _trig_integral(n, 2)
    return m ** (1.0 / (n + 2)) * (n + 2) ** ((n + 1) / (n + 2))


def halfspace_constant_trig_form(n: int) -> float:
    """omega^(1/(n+2)) I2 / I4^((n+1)/(n+2)) with omega_k = k pi^(k/2) / Gamma(k/2).

    Kept for comparison only: this expression is strictly smaller than the
    sharp constant, so half-balls do not attain it.
    """
    if n not in (2, 3):
        raise ValueError("implemented for n = 2, 3")
    k = n - 1
    omega = k * math.pi ** (k / 2) / gamma(k / 2)
    return omega ** (1.0 / (n + 2)) * _trig_integral(n, 2) / _trig_integral(n, 4) ** ((n + 1) / (n + 2))


def halfspace_isoperimetric_check(domain, tol: float = 1e-10) -> VerificationReport:
    fx = halfspace_functionals(domain)
    n = domain.n
    rhs = halfspace_isoperimetric_constant(n) * fx.volume_weight ** ((n + 1) / (n + 2))
    return VerificationReport.inequality(
        "halfspace_isoperimetric", "half-space-weighted-isoperimetry",
        fx.perimeter_weight, rhs, tol * max(1.0, rhs),
        details={"volume_weight": fx.volume_weight, "constant": halfspace_isoperimetric_constant(n)},
    )


# ---------------------------------------------------------------------------
# Euler-Lagrange equation of the half-plane problem


def euler_lagrange_residual(phi, Lambda: float, x: float, *, dphi=None, d2phi=None,
                            h: float = 1e-3) -> float:
    """2 sqrt(1+p^2) - 2 p^2 / sqrt(1+p^2) - phi (p / sqrt(1+p^2))' - Lambda phi, p = phi'.

    Missing derivatives are taken by Richardson-extrapolated central differences.
    """
    f0 = phi(x)
    if dphi is None or d2phi is None:
        def cd(s):
            fp, fm = phi(x + s), phi(x - s)
            return (fp - fm) / (2 * s), (fp - 2 * f0 + fm) / (s * s)

        a1, a2 = cd(h)
        b1, b2 = cd(h / 2)
        p = dphi(x) if dphi is not None else (4 * b1 - a1) / 3
        pp = d2phi(x) if d2phi is not None else (4 * b2 - a2) / 3
    else:
        p, pp = dphi(x), d2phi(x)
    s = math.sqrt(1 + p * p)
    return 2 * s - 2 * p * p / s - f0 * pp / s**3 - Lambda * f0


# ---------------------------------------------------------------------------
# opening map


def _theta_ok(geom: ConeGeometry, theta):
    t = np.asarray(theta, dtype=float)
    ext = geom.link.extent
    if np.any(t < -1e-12 * ext) or np.any(t > ext * (1 + 1e-12)):
        raise ValueError("theta outside the closed link")
    return np.clip(t, 0.0, ext)


def opening_map(geom: ConeGeometry, r, theta, phi=0.0) -> np.ndarray:
    """r^kappa (Pi(grad psi), psi): the cone into the closed upper half-space.

    For n = 3 ``phi`` is the azimuth about the cap's axis.  Returns an array
    with trailing dimension n.
    """
    t = _theta_ok(geom, theta)
    r = np.asarray(r, dtype=float)
    scale = r**geom.kappa
    psi = np.asarray(geom.link.psi(t))
    dpsi = np.asarray(geom.link.dpsi(t))
    if geom.n == 2:
        comps = (-dpsi * np.sin(t), psi)
    else:
        rho = dpsi * np.cos(t)
        phi = np.asarray(phi, dtype=float)
        comps = (rho * np.cos(phi), rho * np.sin(phi), psi)
    comps = np.broadcast_arrays(*(scale * c for c in comps))
    return np.stack(comps, axis=-1)


def opening_jacobian(geom: ConeGeometry, r: float, theta: float) -> np.ndarray:
    """Jacobian of the opening map in the orthonormal frame (e_r, e_theta[, e_phi]) at phi = 0."""
    t = float(_theta_ok(geom, theta))
    link = geom.link
    psi, d1, d2 = float(link.psi(t)), float(link.dpsi(t)), float(link.d2psi(t))
    k = geom.kappa
    s = r ** (k - 1)
    if geom.n == 2:
        gam = np.array([-d1 * math.sin(t), psi])
        dgam = np.array([-d2 * math.sin(t) - d1 * math.cos(t), d1])
        return s * np.column_stack([k * gam, dgam])
    rho = d1 * math.cos(t)
    drho = d2 * math.cos(t) - d1 * math.sin(t)
    azim = rho / math.sin(t) if t > 0 else d2  # rho / sin(t) -> psi''(0) at the pole
    return s * np.column_stack(
        [k * np.array([rho, 0.0, psi]), np.array([drho, 0.0, d1]), np.array([0.0, azim, 0.0])]
    )


def opening_det(geom: ConeGeometry, r: float, theta: float) -> float:
    """|det D Psi| with respect to dr dA_link (so dV_image = det dr dA_link)."""
    J = opening_jacobian(geom, r, theta)
    return abs(float(np.linalg.det(J))) * r ** (geom.n - 1)


def area_ratio(geom: ConeGeometry, r: float, theta: float) -> float:
    """sup over boundary-element orientations of (x_n^2 dA_image) / (w^2 dA).

    x_n^2 / w^2 = r^(2 kappa - 2 alpha); the area stretch of an (n-1)-element
    is at most the product of the n-1 largest singular values of D Psi.
    """
    sv = np.linalg.svd(opening_jacobian(geom, r, theta), compute_uv=False)
    return r ** (2 * geom.kappa - 2 * geom.alpha) * float(np.prod(sv[: geom.n - 1]))


def _theta_grid(geom: ConeGeometry, m: int, closed: bool) -> np.ndarray:
    ext = geom.link.extent
    if closed:
        return np.linspace(0.0, ext, m + 1)
    return (np.arange(m) + 0.5) * ext / m


def _cauchy(seq) -> bool:
    """Successive gaps shrink geometrically and the last one is negligible."""
    seq = np.asarray(seq)
    if not np.all(np.isfinite(seq)):
        return False
    gaps = np.abs(np.diff(seq))
    shrinking = np.all(gaps[1:] <= 0.1 * gaps[:-1] + 1e-14)
    return bool(shrinking and gaps[-1] <= 1e-4 * np.max(np.abs(seq)))


def area_ratio_scan(geom: ConeGeometry, resolution: int = 256) -> VerificationReport:
    """Measure the area-comparison constant as a grid supremum over r in [1/2, 2]."""
    radii = (0.5, 1.0, 2.0)

    def sup(m):
        th = _theta_grid(geom, m, closed=True)
        vals = np.array([[area_ratio(geom, r, t) for t in th] for r in radii])
        return vals

    coarse, fine = sup(resolution), sup(2 * resolution)
    c_coarse, c_fine = float(np.max(coarse)), float(np.max(fine))
    scale_err = float(np.max(np.abs(fine[1:] - fine[:-1]) / np.abs(fine[:-1])))
    stability = abs(c_fine - c_coarse) / c_fine
    # approach to the wall: ratios along theta -> wall
    ext = geom.link.extent
    seq = [area_ratio(geom, 1.0, ext - ext * 10.0**-k) for k in (2, 4, 6, 8)]
    cond = {
        "finite": bool(np.all(np.isfinite(fine))),
        "scale_invariant": scale_err <= 1e-6,
        "stable_under_doubling": stability <= 0.10,
        "finite_wall_limit": _cauchy(seq),
    }
    return VerificationReport(
        "opening_area_ratio", "area-element-comparison",
        c_fine, c_coarse, -stability * c_fine, 0.10 * c_fine,
        resolution=[resolution, 2 * resolution],
        details={
            "c_hat_estimate": c_fine,
            "c_hat_coarse": c_coarse,
            "scale_invariance_error": scale_err,
            "wall_sequence": seq,
            "conditions": cond,
        },
    )


def injectivity_scan(geom: ConeGeometry, resolution: int = 48, min_sep: float = 1e-9) -> VerificationReport:
    """No two grid points of the annulus r in [1/2, 2] map within ``min_sep``."""
    th = _theta_grid(geom, resolution, closed=False)
    rr = np.linspace(0.5, 2.0, resolution)
    R, T = np.meshgrid(rr, th, indexing="ij")
    if geom.n == 2:
        pts = opening_map(geom, R, T).reshape(-1, 2)
    else:
        phis = np.linspace(0.0, 2 * math.pi, 8, endpoint=False)
        pts = np.concatenate(
            [opening_map(geom, R, T, phi).reshape(-1, 3) for phi in phis]
        )
    dist, _ = cKDTree(pts).query(pts, k=2)
    closest = float(np.min(dist[:, 1]))
    return VerificationReport.inequality(
        "opening_injectivity", "opening-map-diffeomorphism", closest, min_sep, 0.0,
        resolution=resolution, details={"points": int(len(pts))},
    )


def jacobian_scan(geom: ConeGeometry, resolution: int = 256) -> VerificationReport:
    """Bounds of |det D Psi| on r = 1 and its power law in r."""
    th = _theta_grid(geom, resolution, closed=False)
    d1 = np.array([opening_det(geom, 1.0, t) for t in th])
    expo = (2 * geom.n * geom.alpha + geom.n**2 - 2 * geom.n - 1) / (geom.n + 1)
    worst = 0.0
    for r in (0.5, 2.0, 3.7):
        dr = np.array([opening_det(geom, r, t) for t in th[:: max(1, resolution // 32)]])
        ref = d1[:: max(1, resolution // 32)] * r**expo
        worst = max(worst, float(np.max(np.abs(dr - ref) / ref)))
    return VerificationReport(
        "opening_jacobian", "opening-map-jacobian-power-law",
        float(np.min(d1)), 0.0, -worst, 1e-6,
        resolution=resolution,
        details={
            "c1": float(np.min(d1)), "c2": float(np.max(d1)),
            "power_law_exponent": expo, "power_law_error": worst,
            "conditions": {"positive": bool(np.min(d1) > 0)},
        },
    )

"""First Dirichlet eigenvalue of star-shaped cone domains by finite volumes.

The Laplacian is written in divergence form with density
``sigma = r^(n-1) sin(theta)^(n-2)``; for n = 3 only axisymmetric functions
are represented, which is where the first eigenfunction of an axisymmetric
domain lives.  Unknowns sit on the nodes of a tensor (r, theta) grid strictly
inside the domain.  The curved boundary r = R(theta) enters through the
distance from the last interior node to the crossing point (a symmetric
ghost-distance treatment, first order locally).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import pyamg
import scipy.sparse as sp
from scipy.optimize import brentq
from scipy.sparse.linalg import cg

from .geometry import RadialGraphDomain
from .report import VerificationReport
from .weight import weight_eval

__all__ = [
    "TensorGrid",
    "SpectralResult",
    "ConvergenceError",
    "tensor_grid",
    "assemble_operator",
    "smallest_eigenpair",
    "domain_eigenvalue",
    "test_function_identity",
    "coarea_profile",
]

_MIN_GAP = 1e-3  # boundary distances are clamped to this fraction of a step


class ConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class TensorGrid:
    n: int
    r: np.ndarray
    theta: np.ndarray
    inside: np.ndarray  # (len(r), len(theta)) unknown mask
    R_nodes: np.ndarray  # profile at each theta node

    @property
    def h_r(self) -> float:
        return float(self.r[1] - self.r[0])

    @property
    def h_theta(self) -> float:
        return float(self.theta[1] - self.theta[0])

    @property
    def shape(self) -> tuple:
        return self.inside.shape

    @property
    def unknowns(self) -> int:
        return int(self.inside.sum())

    def density(self) -> np.ndarray:
        r, t = np.meshgrid(self.r, self.theta, indexing="ij")
        return r ** (self.n - 1) * np.sin(t) ** (self.n - 2)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "radial_nodes": len(self.r),
            "angular_nodes": len(self.theta),
            "r_max": float(self.r[-1]),
            "h_r": self.h_r,
            "h_theta": self.h_theta,
            "unknowns": self.unknowns,
        }


def tensor_grid(domain: RadialGraphDomain, resolution: int, *, angular: int | None = None,
                r_max: float | None = None) -> TensorGrid:
    """``resolution`` radial intervals on [0, r_max] and ``angular`` (default the same) on the link."""
    geom = domain.geom
    nt = resolution if angular is None else angular
    rmax = domain.max_radius if r_max is None else float(r_max)
    if rmax < domain.max_radius * (1 - 1e-12):
        raise ValueError("r_max must cover the profile")
    r = np.linspace(0.0, rmax, resolution + 1)
    theta = np.linspace(0.0, geom.link.extent, nt + 1)
    Rn = np.asarray(domain.radius(theta), dtype=float)
    h = r[1] - r[0]
    if np.min(Rn) < 4 * h:
        raise ValueError("grid does not resolve the profile (need >= 4 radial nodes everywhere)")
    inside = r[:, None] < Rn[None, :] * (1 - 1e-12)
    inside[0, :] = False  # apex
    inside[:, -1] = False  # wall
    if geom.n == 2:
        inside[:, 0] = False
    return TensorGrid(geom.n, r, theta, inside, Rn)


def _theta_weight(n: int, lo, hi):
    """int_lo^hi sin^(n-2)."""
    if n == 2:
        return hi - lo
    return np.cos(lo) - np.cos(hi)


def _radial_weight(power: int, lo, hi):
    """int_lo^hi r^power dr (power -1 gives a log)."""
    if power == -1:
        return np.log(hi / lo)
    return (hi ** (power + 1) - lo ** (power + 1)) / (power + 1)


def assemble_operator(domain: RadialGraphDomain, grid: TensorGrid):
    """Stiffness and (diagonal) mass for -div(sigma grad u) = lam sigma u.

    Returns ``(K, M, index)`` with ``index`` mapping grid nodes to unknowns
    (-1 outside).  The common factor 2 pi for n = 3 is dropped from both.
    """
    n = grid.n
    r, th = grid.r, grid.theta
    hr, ht = grid.h_r, grid.h_theta
    inside = grid.inside
    nr, nt = inside.shape
    if not np.allclose(grid.R_nodes, domain.radius(th), rtol=0, atol=1e-12 * max(1.0, r[-1])):
        raise ValueError("grid was built for a different profile")
    index = -np.ones(inside.shape, dtype=np.int64)
    index[inside] = np.arange(inside.sum())
    N = int(inside.sum())

    # control-volume extents (uncut)
    rlo = np.maximum(r - hr / 2, 0.0)
    rhi = r + hr / 2
    tlo = np.maximum(th - ht / 2, 0.0)
    thi = np.minimum(th + ht / 2, th[-1])
    # cut extents used for the mass near the curved boundary
    mrhi = np.broadcast_to(rhi[:, None], inside.shape).copy()
    mtlo = np.broadcast_to(tlo[None, :], inside.shape).copy()
    mthi = np.broadcast_to(thi[None, :], inside.shape).copy()

    ang_r = _radial_weight(n - 3, np.where(rlo > 0, rlo, 1.0), rhi)  # int r^(n-3) over the r-cell
    ang_r[0] = 0.0
    S = _theta_weight(n, tlo, thi)
    diag = np.zeros(N)
    rows, cols, vals = [], [], []

    def couple(a, b, w):
        rows.append(index[a]); cols.append(index[b]); vals.append(-w)
        rows.append(index[b]); cols.append(index[a]); vals.append(-w)
        np.add.at(diag, index[a], w)
        np.add.at(diag, index[b], w)

    I, J = np.meshgrid(np.arange(nr), np.arange(nt), indexing="ij")

    # radial links between interior nodes
    pair = inside[:-1] & inside[1:]
    a = (I[:-1][pair], J[:-1][pair])
    couple(a, (a[0] + 1, a[1]), (r[a[0]] + hr / 2) ** (n - 1) * S[a[1]] / hr)
    # apex side: the apex is a Dirichlet node one step inward
    first = inside[1]
    jj = np.nonzero(first)[0]
    np.add.at(diag, index[1, jj], (hr / 2) ** (n - 1) * S[jj] / hr)
    # curved boundary beyond the last interior node of each ray
    last = inside.copy()
    last[:-1] &= ~inside[1:]
    li, lj = np.nonzero(last)
    d = np.maximum(grid.R_nodes[lj] - r[li], _MIN_GAP * hr)
    np.add.at(diag, index[li, lj], (r[li] + d / 2) ** (n - 1) * S[lj] / d)
    mrhi[li, lj] = np.minimum(rhi[li], r[li] + d / 2)

    # angular links between interior nodes
    pair = inside[:, :-1] & inside[:, 1:]
    a = (I[:, :-1][pair], J[:, :-1][pair])
    couple(a, (a[0], a[1] + 1), np.sin(th[a[1]] + ht / 2) ** (n - 2) * ang_r[a[0]] / ht)
    # angular exits: wall nodes (Dirichlet, full step) or profile crossings
    for step in (1, -1):
        nb = np.zeros_like(inside)
        if step == 1:
            nb[:, :-1] = inside[:, :-1] & ~inside[:, 1:]
        else:
            nb[:, 1:] = inside[:, 1:] & ~inside[:, :-1]
        for i, j in zip(*np.nonzero(nb)):
            jn = j + step
            if jn == nt - 1 or (n == 2 and jn == 0):
                dist = ht
            else:
                dist = max(_crossing(domain, r[i], th[j], th[jn]), _MIN_GAP * ht)
                if step == 1:
                    mthi[i, j] = min(thi[j], th[j] + dist / 2)
                else:
                    mtlo[i, j] = max(tlo[j], th[j] - dist / 2)
            diag[index[i, j]] += np.sin(th[j] + step * dist / 2) ** (n - 2) * ang_r[i] / dist

    rows.append(np.arange(N)); cols.append(np.arange(N)); vals.append(diag)
    K = sp.csr_matrix((np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))), shape=(N, N))
    K.sum_duplicates()
    mass_r = _radial_weight(n - 1, rlo[:, None], mrhi)
    mass_t = _theta_weight(n, mtlo, mthi)
    M = (mass_r * mass_t)[inside]
    return K, M, index


def _crossing(domain, ri, t_in, t_out) -> float:
    """Angular distance from t_in to where the profile drops to ri."""
    f = lambda t: float(domain.radius(t)) - ri
    if f(t_out) >= 0:
        return abs(t_out - t_in)
    lo, hi = (t_in, t_out) if t_in < t_out else (t_out, t_in)
    root = brentq(f, lo, hi, xtol=1e-14)
    return abs(root - t_in)


# ---------------------------------------------------------------------------
# eigen-solve


@dataclass
class SpectralResult:
    eigenvalue: float
    vector: np.ndarray | None
    residual: float
    iterations: int
    resolution: int | None = None
    order: float | None = None
    grid: TensorGrid | None = None
    index: np.ndarray | None = None
    mass: np.ndarray | None = None
    details: dict = field(default_factory=dict)

    def to_dict(self, include_vector: bool = False) -> dict:
        d = {
            "lambda": self.eigenvalue,
            "residual": self.residual,
            "iterations": self.iterations,
            "resolution": self.resolution,
            "order": self.order,
            "grid": None if self.grid is None else self.grid.to_dict(),
            "details": self.details,
        }
        if include_vector and self.vector is not None:
            d["vector"] = self.vector.tolist()
        return d


def _mass_vector(M) -> np.ndarray:
    if sp.issparse(M):
        return np.asarray(M.diagonal(), dtype=float)
    return np.asarray(M, dtype=float)


def smallest_eigenpair(K, M, tol: float = 1e-10, *, maxiter: int = 500,
                       x0: np.ndarray | None = None, residual_tol: float = 1e-8) -> SpectralResult:
    """Inverse iteration for K x = lam M x with M diagonal (vector or sparse diagonal).

    Inner systems are solved by conjugate gradients with an algebraic
    multigrid preconditioner.  Once the Rayleigh quotient has settled to 1%
    the iteration switches to a shift of 0.8 times the current estimate,
    which stays below the smallest eigenvalue because the quotient is an
    upper bound.  The residual is ||K x - lam M x|| / (lam ||M x||).
    """
    m = _mass_vector(M)
    K = sp.csr_matrix(K)
    N = K.shape[0]
    if m.shape != (N,) or np.any(m <= 0):
        raise ValueError("mass must be a positive diagonal of matching size")
    x = np.ones(N) if x0 is None else np.array(x0, dtype=float)
    x /= math.sqrt(x @ (m * x))
    lam = float(x @ (K @ x))
    shift = 0.0
    A = K
    prec = pyamg.ruge_stuben_solver(A).aspreconditioner(cycle="V")
    inner = 1e-2
    res = math.inf
    history = []
    for it in range(1, maxiter + 1):
        b = m * x
        y, info = cg(A, b, x0=x / max(lam - shift, 1e-300), rtol=inner, atol=0.0, M=prec, maxiter=2000)
        if info < 0:
            raise ConvergenceError("inner CG breakdown")
        y /= math.sqrt(y @ (m * y))
        if y.sum() < 0:
            y = -y
        new = float(y @ (K @ y))
        rvec = K @ y - new * (m * y)
        res = float(np.linalg.norm(rvec) / (new * np.linalg.norm(m * y)))
        change = abs(new - lam) / new
        history.append(new)
        x, lam = y, new
        if shift == 0.0 and change < 1e-2 and it >= 2:
            shift = 0.8 * lam
            A = (K - sp.diags(shift * m)).tocsr()
            prec = pyamg.ruge_stuben_solver(A).aspreconditioner(cycle="V")
        inner = float(np.clip(0.1 * res, 1e-13, 1e-2))
        if change < tol and res < residual_tol:
            break
    else:
        raise ConvergenceError(f"inverse iteration did not converge in {maxiter} steps (residual {res:.3g})")
    return SpectralResult(lam, x, res, it, details={"shift": shift, "history": history})


def _solve_on(domain, resolution, tol, angular=None):
    grid = tensor_grid(domain, resolution, angular=angular)
    K, M, index = assemble_operator(domain, grid)
    out = smallest_eigenpair(K, M, tol)
    out.resolution, out.grid, out.index, out.mass = resolution, grid, index, M
    return out


def domain_eigenvalue(domain: RadialGraphDomain, resolution: int = 256, *, tol: float = 1e-10,
                      extrapolate: bool = True) -> SpectralResult:
    """lambda_1(domain) at ``resolution`` and, if requested, at half and double it.

    The extrapolated value assumes second order; the observed order comes
    from the three levels.  The returned eigenvector is the base-level one.
    """
    base = _solve_on(domain, resolution, tol)
    base.details["base_eigenvalue"] = base.eigenvalue
    if not extrapolate:
        return base
    coarse = _solve_on(domain, resolution // 2, tol)
    fine = _solve_on(domain, 2 * resolution, tol)
    l0, l1, l2 = coarse.eigenvalue, base.eigenvalue, fine.eigenvalue
    d1, d2 = l0 - l1, l1 - l2
    order = math.log2(d1 / d2) if d1 * d2 > 0 else math.nan
    extrapolated = l2 + (l2 - l1) / 3.0
    base.details.update({
        "levels": [[resolution // 2, l0], [resolution, l1], [2 * resolution, l2]],
        "extrapolated": extrapolated,
    })
    base.order = order
    base.eigenvalue = extrapolated
    return base


# ---------------------------------------------------------------------------
# diagnostics


def _polar_grid(domain, resolution):
    geom = domain.geom
    r = np.linspace(0.0, domain.max_radius, resolution + 1)
    th = np.linspace(0.0, geom.link.extent, resolution + 1)
    return r, th


def _trap_weights(x):
    w = np.empty_like(x)
    h = np.diff(x)
    w[0], w[-1] = h[0] / 2, h[-1] / 2
    w[1:-1] = (h[:-1] + h[1:]) / 2
    return w


def test_function_identity(domain: RadialGraphDomain, v, resolution: int = 256,
                           tol: float = 1e-3) -> VerificationReport:
    """int |grad(w v)|^2 = int w^2 |grad v|^2 for v vanishing near the curved boundary.

    ``v(r, theta)`` is sampled on a tensor grid; derivatives are second-order
    differences and the integrals trapezoidal, so agreement improves like h^2.
    """
    geom = domain.geom
    n = geom.n
    r, th = _polar_grid(domain, resolution)
    R2, T2 = np.meshgrid(r, th, indexing="ij")
    vv = np.asarray(v(R2, T2), dtype=float) * np.ones_like(R2)
    ww = np.asarray(weight_eval(geom, R2, T2))
    uu = ww * vv
    mask = R2 < np.asarray(domain.radius(th))[None, :]
    dens = R2 ** (n - 1) * (np.sin(T2) ** (n - 2))
    with np.errstate(divide="ignore", invalid="ignore"):
        inv_r2 = np.where(R2 > 0, 1.0 / R2**2, 0.0)
    W = _trap_weights(r)[:, None] * _trap_weights(th)[None, :] * dens * mask
    if n == 3:
        W = 2 * math.pi * W

    def energy(f, weight2):
        fr, ft = np.gradient(f, r, th, edge_order=2)
        return float(np.sum(W * weight2 * (fr**2 + ft**2 * inv_r2)))

    lhs = energy(uu, 1.0)
    rhs = energy(vv, ww**2)
    scale = max(abs(lhs), abs(rhs))
    rel = abs(lhs - rhs) / scale if scale > 0 else 0.0
    return VerificationReport(
        "test_function_identity", "energy-identity-harmonic-weight",
        lhs, rhs, -rel, tol, resolution=resolution,
        details={"relative_difference": rel},
    )


test_function_identity.__test__ = False  # keep pytest from collecting it on import


def coarea_profile(domain: RadialGraphDomain, result: SpectralResult, levels: int = 64,
                   apex_skip: int = 4):
    """zeta(t) = int_{v > t} w^2 dV with v = u / w on the eigensolver's grid.

    Nodes within ``apex_skip`` radial steps of the apex are dropped: u and w
    both vanish there and their discrete ratio is unreliable, while their
    share of the weighted volume is O(h^(2a+2)).  Returns ``(t, zeta)`` with t
    running from 0 to max v.
    """
    grid, index = result.grid, result.index
    if grid is None or result.vector is None:
        raise ValueError("result carries no grid or eigenvector")
    geom = domain.geom
    R2, T2 = np.meshgrid(grid.r, grid.theta, indexing="ij")
    inside = grid.inside & (R2 >= apex_skip * grid.h_r)
    w = np.asarray(weight_eval(geom, R2, T2))[inside]
    u = result.vector[index[inside]]
    v = u / w
    # node cells; the outermost node of each ray owns the shell up to R
    hr, ht = grid.h_r, grid.h_theta
    lo = R2 - hr / 2
    hi = R2 + hr / 2
    last = grid.inside.copy()
    last[:-1] &= ~grid.inside[1:]
    hi[last] = np.broadcast_to(grid.R_nodes[None, :], inside.shape)[last]
    tlo = np.maximum(T2 - ht / 2, 0.0)
    thi = np.minimum(T2 + ht / 2, grid.theta[-1])
    cell = _radial_weight(geom.n - 1, lo, hi) * _theta_weight(geom.n, tlo, thi)
    dens = cell[inside] * w**2 * (2 * math.pi if geom.n == 3 else 1.0)
    t = np.linspace(0.0, float(v.max()), levels)
    order = np.argsort(v)
    vs = v[order]
    tail = np.concatenate([np.cumsum(dens[order][::-1])[::-1], [0.0]])
    zeta = tail[np.searchsorted(vs, t, side="right")]
    if np.any(np.diff(zeta) > 0):
        raise AssertionError("distribution function is not monotone")
    return t, zeta

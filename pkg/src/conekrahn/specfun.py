"""Real-order Bessel functions of the first kind and their first zeros.

Everything here is self-contained: the gamma function comes from a Lanczos
approximation, J_nu from its ascending series near the origin and from
Miller's backward recurrence elsewhere.
"""
from __future__ import annotations

import math

import numpy as np
from scipy.optimize import brentq

__all__ = [
    "gamma",
    "bessel_j",
    "bessel_j_prime",
    "first_bessel_zero",
    "BesselError",
]

# Lanczos coefficients, g = 7, n = 9 (relative accuracy ~1e-15 for x > 0.5).
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

_SERIES_MAX_Y = 1.0  # series used while (x/2)^2 <= _SERIES_MAX_Y * (nu + 1)
_ZERO_SCAN_STEP = 0.25
_MAX_ORDER = 50.0


class BesselError(ArithmeticError):
    """Raised when a zero search fails to bracket a root."""


def gamma(x: float) -> float:
    """Gamma function for real ``x`` (not a non-positive integer)."""
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"gamma: non-finite argument {x!r}")
    if x <= 0 and x == math.floor(x):
        raise ValueError(f"gamma: pole at {x!r}")
    if x < 0.5:
        return math.pi / (math.sin(math.pi * x) * gamma(1.0 - x))
    x -= 1.0
    acc = _LANCZOS[0]
    for k in range(1, len(_LANCZOS)):
        acc += _LANCZOS[k] / (x + k)
    t = x + _LANCZOS_G + 0.5
    return math.sqrt(2.0 * math.pi) * t ** (x + 0.5) * math.exp(-t) * acc


def _check_order(nu: float) -> float:
    nu = float(nu)
    if not math.isfinite(nu) or nu < 0:
        raise ValueError(f"Bessel order must be finite and >= 0, got {nu!r}")
    if nu > _MAX_ORDER:
        raise ValueError(f"Bessel order {nu} exceeds supported maximum {_MAX_ORDER}")
    return nu


def _series(nu: float, x: np.ndarray) -> np.ndarray:
    # J_nu(x) = (x/2)^nu / Gamma(nu+1) * sum_k (-y)^k / (k! (nu+1)_k),  y = x^2/4
    y = 0.25 * x * x
    term = np.ones_like(x)
    total = np.ones_like(x)
    for k in range(1, 200):
        term = term * (-y) / (k * (nu + k))
        total = total + term
        if np.all(np.abs(term) <= 1e-17 * np.maximum(np.abs(total), 1e-300)):
            break
    return total * (0.5 * x) ** nu / gamma(nu + 1.0)


def _miller(nu: float, x: np.ndarray) -> np.ndarray:
    """Backward recurrence normalised with the Neumann sum

    (x/2)^nu / Gamma(nu+1) = J_nu + sum_{k>=1} (nu+2k) (nu+1)_{k-1} / k! * J_{nu+2k}.
    """
    xmax = float(np.max(x))
    kstart = int(xmax + 2.0 * math.sqrt(xmax) + 40)
    if kstart % 2:
        kstart += 1
    inv_x = 1.0 / x
    j_hi = np.zeros_like(x)  # J_{nu+k+1}
    j_k = np.full_like(x, 1e-300)  # J_{nu+k}
    norm = np.zeros_like(x)
    coef = _neumann_coefficients(nu, kstart // 2)
    for k in range(kstart, 0, -1):
        if k % 2 == 0:
            norm += coef[k // 2] * j_k
        j_lo = 2.0 * (nu + k) * inv_x * j_k - j_hi
        j_hi, j_k = j_k, j_lo
        big = np.abs(j_k) > 1e250
        if np.any(big):
            scale = np.where(big, 1e-250, 1.0)
            j_k *= scale
            j_hi *= scale
            norm *= scale
    norm += j_k  # k = 0 term has coefficient 1
    return j_k / norm * ((0.5 * x) ** nu / gamma(nu + 1.0))


def _neumann_coefficients(nu: float, kmax: int) -> np.ndarray:
    c = np.empty(kmax + 1)
    c[0] = 1.0
    poch = 1.0  # (nu+1)_{k-1} / k!
    for k in range(1, kmax + 1):
        if k > 1:
            poch *= (nu + k - 1) / k
        else:
            poch = 1.0
        c[k] = (nu + 2 * k) * poch
    return c


def _series_scalar(nu: float, x: float) -> float:
    y = 0.25 * x * x
    term = total = 1.0
    for k in range(1, 200):
        term *= -y / (k * (nu + k))
        total += term
        if abs(term) <= 1e-17 * max(abs(total), 1e-300):
            break
    return total * (0.5 * x) ** nu / gamma(nu + 1.0)


def _miller_scalar(nu: float, x: float) -> float:
    # same recurrence as _miller, in plain floats (the zero search calls this a lot)
    kstart = int(x + 2.0 * math.sqrt(x) + 40)
    kstart += kstart % 2
    inv_x = 1.0 / x
    j_hi, j_k, norm = 0.0, 1e-300, 0.0
    coef = _neumann_coefficients(nu, kstart // 2).tolist()
    for k in range(kstart, 0, -1):
        if k % 2 == 0:
            norm += coef[k // 2] * j_k
        j_hi, j_k = j_k, 2.0 * (nu + k) * inv_x * j_k - j_hi
        if abs(j_k) > 1e250:
            j_k *= 1e-250
            j_hi *= 1e-250
            norm *= 1e-250
    norm += j_k
    return j_k / norm * ((0.5 * x) ** nu / gamma(nu + 1.0))


def bessel_j(nu: float, x):
    """J_nu(x) for real order ``nu >= 0`` and ``x >= 0``.

    Accepts a scalar or an array for ``x``; returns the same shape.
    """
    nu = _check_order(nu)
    if np.ndim(x) == 0:
        xs = float(x)
        if not math.isfinite(xs):
            raise ValueError("bessel_j: non-finite argument")
        if xs < 0:
            raise ValueError("bessel_j: argument must be >= 0")
        if xs == 0.0:
            return 1.0 if nu == 0 else 0.0
        if 0.25 * xs * xs <= _SERIES_MAX_Y * (nu + 1.0):
            return _series_scalar(nu, xs)
        return _miller_scalar(nu, xs)
    xa = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(xa)):
        raise ValueError("bessel_j: non-finite argument")
    if np.any(xa < 0):
        raise ValueError("bessel_j: argument must be >= 0")
    flat = xa.reshape(-1)
    out = np.empty_like(flat)
    zero = flat == 0.0
    out[zero] = 1.0 if nu == 0 else 0.0
    small = ~zero & (0.25 * flat * flat <= _SERIES_MAX_Y * (nu + 1.0))
    large = ~zero & ~small
    if np.any(small):
        out[small] = _series(nu, flat[small])
    if np.any(large):
        out[large] = _miller(nu, flat[large])
    return out.reshape(xa.shape)


def bessel_j_prime(nu: float, x):
    """Derivative dJ_nu/dx, from J' = (nu/x) J_nu - J_{nu+1}."""
    nu = _check_order(nu)
    xa = np.asarray(x, dtype=float)
    if np.any(xa < 0):
        raise ValueError("bessel_j_prime: argument must be >= 0")
    at_zero = xa == 0
    if np.any(at_zero) and 0.0 < nu < 1.0:
        raise ValueError("bessel_j_prime: unbounded at x = 0 for 0 < nu < 1")
    safe = np.where(at_zero, 1.0, xa)
    val = nu / safe * np.asarray(bessel_j(nu, safe)) - np.asarray(bessel_j(nu + 1.0, safe))
    val = np.where(at_zero, 0.5 if nu == 1.0 else 0.0, val)
    return float(val) if val.ndim == 0 else val


def first_bessel_zero(nu: float, *, xtol: float = 1e-12) -> float:
    """Smallest positive zero j_nu of J_nu.

    Scans upward from just above ``nu`` (j_nu > nu always) on a grid of step
    0.25, evaluated in blocks, then refines the first sign change with Brent's
    method.
    """
    nu = _check_order(nu)
    lo = nu + 1e-6
    if bessel_j(nu, lo) <= 0:
        raise BesselError(f"J_{nu} not positive just above nu")
    steps = np.arange(1, 65) * _ZERO_SCAN_STEP
    for block in range(60):
        xs = lo + steps
        f = np.asarray(bessel_j(nu, xs), dtype=float) * np.ones_like(xs)
        hit = np.flatnonzero(f <= 0)
        if hit.size:
            i = int(hit[0])
            hi = float(xs[i])
            if i:
                lo = float(xs[i - 1])
            break
        lo = float(xs[-1])
    else:
        raise BesselError(f"no sign change of J_{nu} found")
    if bessel_j(nu, hi) == 0.0:
        return hi
    return float(brentq(lambda t: bessel_j(nu, t), lo, hi, xtol=min(xtol, 1e-14), rtol=8.9e-16, maxiter=200))

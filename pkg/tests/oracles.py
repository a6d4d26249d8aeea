"""Independent reference computations used only by the test suite.

Nothing here calls into the package: Bessel values come from an
alternating power series evaluated in 40-digit arithmetic, zeros from
bisection on that series, cap eigenvalues from Legendre functions, and
integrals from brute-force midpoint rules.
"""
import math

import mpmath as mp
import numpy as np

mp.mp.dps = 40


def bessel_series(nu, x):
    x = mp.mpf(x)
    nu = mp.mpf(nu)
    term = (x / 2) ** nu / mp.gamma(nu + 1)
    total = mp.mpf(0)
    k = 0
    while True:
        total += term
        k += 1
        term *= -(x / 2) ** 2 / (k * (k + nu))
        if k > x and abs(term) < mp.mpf(10) ** -45:
            return total


def bessel_zero(nu, step=0.25):
    """First positive zero by scanning from nu + 1e-6 and 160 bisection steps."""
    a = mp.mpf(nu) + mp.mpf("1e-6")
    fa = bessel_series(nu, a)
    while True:
        b = a + mp.mpf(step)
        fb = bessel_series(nu, b)
        if fa * fb <= 0:
            break
        a, fa = b, fb
    for _ in range(160):
        m = (a + b) / 2
        fm = bessel_series(nu, m)
        if fa * fm <= 0:
            b = m
        else:
            a, fa = m, fm
    return float((a + b) / 2)


def tan_root():
    """Smallest positive root of tan x = x."""
    return float(mp.findroot(lambda x: mp.tan(x) - x, 4.49))


def cap_mu(theta0):
    """mu = nu (nu + 1) with P_nu(cos theta0) = 0, first root."""
    nu = mp.findroot(lambda v: mp.legenp(v, 0, mp.cos(theta0)), 1.5)
    return float(nu * (nu + 1))


def midpoint_volume(geom, R, nr=2000, nt=2000):
    """int_D w^2 dV by a 2-D midpoint rule in (r, theta)."""
    ext = geom.link.extent
    th = (np.arange(nt) + 0.5) * ext / nt
    psi2 = np.asarray(geom.link.psi(th)) ** 2
    meas = np.ones_like(th) if geom.n == 2 else 2 * math.pi * np.sin(th)
    total = 0.0
    for t, p2, m in zip(th, psi2, meas):
        Rt = float(R(t))
        r = (np.arange(nr) + 0.5) * Rt / nr
        total += np.sum(r ** (2 * geom.alpha + geom.n - 1)) * Rt / nr * p2 * m
    return total * ext / nt


def polyline_perimeter(geom, R, m=20000):
    """int over r = R(theta) of w^2 dA from an inscribed polyline."""
    ext = geom.link.extent
    th = np.linspace(0.0, ext, m + 1)
    r = np.asarray(R(th), dtype=float)
    x, y = r * np.cos(th), r * np.sin(th)
    seg = np.hypot(np.diff(x), np.diff(y))
    tm = 0.5 * (th[1:] + th[:-1])
    rm = 0.5 * (r[1:] + r[:-1])
    w2 = rm ** (2 * geom.alpha) * np.asarray(geom.link.psi(tm)) ** 2
    if geom.n == 2:
        return float(np.sum(w2 * seg))
    # surface of revolution about the pole axis: ring radius = r sin(theta)
    return float(np.sum(w2 * seg * 2 * math.pi * rm * np.sin(tm)))

import math

import numpy as np
import pytest

from conekrahn.comparison import (
    ComparisonProblem,
    ShootingFailure,
    bessel_comparison_solution,
    comparison_eigenvalue_closed_form,
    comparison_eigenvalue_shooting,
    comparison_ode_residual,
    comparison_profile,
    rayleigh_lower_bound,
    verify_main_theorem,
)
from conekrahn.geometry import RadialGraphDomain
from conekrahn.sector import sector_eigenvalue
from conekrahn.specfun import gamma
from conekrahn.weight import sector_weighted_volume
from oracles import bessel_zero

ORDERS = [1.2, 1.5, 2.0, 3.0, 5.0]


@pytest.mark.parametrize("a", ORDERS)
def test_closed_form_against_oracle_zero(a):
    j = bessel_zero(a)
    for zb in (0.1, 1.0, 10.0):
        lam = comparison_eigenvalue_closed_form(a, zb)
        assert lam == pytest.approx(zb ** (-1 / (a + 1)) * j * j / (2 * a + 2) ** 2, rel=1e-13)


@pytest.mark.parametrize("a", ORDERS)
@pytest.mark.parametrize("zb", [0.1, 1.0, 10.0])
def test_shooting_matches_closed_form(a, zb):
    lam = comparison_eigenvalue_shooting(ComparisonProblem(a, zb))
    assert lam == pytest.approx(comparison_eigenvalue_closed_form(a, zb), rel=1e-9)


def test_exponents():
    pr = ComparisonProblem(2.0, 1.0)
    assert pr.p == pytest.approx(5 / 6)
    assert pr.q == pytest.approx(-1 / 3)
    assert pr.m == pytest.approx(1 / 6)
    assert pr.b == 2.0


@pytest.mark.parametrize("a", [1.2, 2.0, 5.0])
def test_bessel_solution_solves_ode(a):
    lam = comparison_eigenvalue_closed_form(a, 1.0)
    t = lambda z: float(bessel_comparison_solution(a, lam, z))
    for z in np.linspace(0.05, 0.95, 19):
        assert abs(comparison_ode_residual(a, lam, t, z)) < 1e-8


def test_bessel_solution_vanishes_at_endpoint():
    a, zb = 3.0, 2.5
    lam = comparison_eigenvalue_closed_form(a, zb)
    assert abs(bessel_comparison_solution(a, lam, zb)) < 1e-13


def test_wrong_sign_of_index_fails_at_origin():
    # b = -a with a = 3/2: J_(-3/2)(x) = sqrt(2/(pi x)) (-cos x / x - sin x) solves the
    # same equation but its flux zeta^(2p) t' tends to a nonzero limit at 0
    a = 1.5
    lam = comparison_eigenvalue_closed_form(a, 1.0)
    q = -a / (2 * a + 2)
    p = (2 * a + 1) / (2 * a + 2)

    def t(z):
        x = (2 * a + 2) * math.sqrt(lam) * z ** (1 / (2 * a + 2))
        return z**q * math.sqrt(2 / (math.pi * x)) * (-math.cos(x) / x - math.sin(x))

    assert abs(comparison_ode_residual(a, lam, t, 0.4)) < 1e-6 * abs(t(0.4))

    def flux(z):
        h = 1e-4 * z
        return z ** (2 * p) * (t(z + h) - t(z - h)) / (2 * h)

    limits = [flux(z) for z in (1e-6, 1e-8, 1e-10)]
    assert abs(limits[-1]) > 1e-2
    assert abs(limits[-1] - limits[-2]) < 1e-2 * abs(limits[-1])
    assert abs(t(1e-10)) > 1e3


def test_profile_matches_bessel_solution():
    a, zb = 2.0, 1.0
    lam = comparison_eigenvalue_closed_form(a, zb)
    z = np.linspace(1e-6, zb, 50)
    amp = (math.sqrt(lam) * (2 * a + 2) / 2) ** a / gamma(a + 1)
    shoot = comparison_profile(ComparisonProblem(a, zb), lam, z)
    bessel = bessel_comparison_solution(a, lam, z) / amp
    assert np.max(np.abs(shoot - bessel)) < 1e-9
    assert abs(shoot[-1]) < 1e-9
    assert np.all(shoot[:-1] > 0)


def test_flux_vanishes_at_origin():
    a, zb = 1.5, 1.0
    lam = comparison_eigenvalue_closed_form(a, zb)
    p = (2 * a + 1) / (2 * a + 2)
    flux = []
    for z in (1e-2, 1e-4, 1e-6):
        h = 1e-3 * z
        d = (comparison_profile(ComparisonProblem(a, zb), lam, [z + h])[0]
             - comparison_profile(ComparisonProblem(a, zb), lam, [z - h])[0]) / (2 * h)
        flux.append(abs(z ** (2 * p) * d))
    assert flux[0] > flux[1] > flux[2]
    assert flux[2] < 1e-4


@pytest.mark.parametrize("a", ORDERS)
def test_bound_equals_sector_eigenvalue(a, quarter):
    # identity needs only a: compare against j_a^2 / r0^2 directly
    for r0 in (0.7, 1.0, 2.0):
        V = r0 ** (2 * a + 2) / (2 * a + 2)
        assert rayleigh_lower_bound(a, V) == pytest.approx(bessel_zero(a) ** 2 / r0**2, rel=1e-12)


def test_bound_on_geometry(geom):
    V = sector_weighted_volume(geom, 1.3)
    assert rayleigh_lower_bound(geom, V) == pytest.approx(sector_eigenvalue(geom, 1.3), rel=1e-12)


def test_bound_decreases_with_volume():
    vals = [rayleigh_lower_bound(2.0, V) for V in (0.1, 0.5, 1.0, 4.0)]
    assert all(x > y for x, y in zip(vals, vals[1:]))


def test_validation():
    with pytest.raises(ValueError):
        ComparisonProblem(-1.0, 1.0)
    with pytest.raises(ValueError):
        ComparisonProblem(1.0, 0.0)
    with pytest.raises(ValueError):
        comparison_eigenvalue_shooting(ComparisonProblem(1.0, 1.0), tol=1e-12)
    with pytest.raises(ValueError):
        rayleigh_lower_bound(2.0, 0.0)
    with pytest.raises(ValueError):
        comparison_profile(ComparisonProblem(1.0, 1.0), 1.0, [0.0])


def test_shooting_failure_is_reported(monkeypatch):
    import conekrahn.comparison as cmp

    monkeypatch.setattr(cmp, "_shoot", lambda *a, **k: (_ for _ in ()).throw(ShootingFailure("stiff")))
    with pytest.raises(ShootingFailure):
        comparison_eigenvalue_shooting(ComparisonProblem(2.0, 1.0))


def test_main_theorem_sector_and_perturbation(quarter):
    sector = verify_main_theorem(RadialGraphDomain.sector(quarter, 1.0), 64)
    assert sector.passed and "sector_equality" in sector.details["conditions"]
    ext = quarter.link.extent
    wavy = RadialGraphDomain.from_function(quarter, lambda t: 1 + 0.3 * np.cos(math.pi * t / ext))
    r = verify_main_theorem(wavy, 64)
    assert r.passed and r.details["conditions"]["strict_beyond_budget"]
    assert r.details["relative_margin"] > 0.1

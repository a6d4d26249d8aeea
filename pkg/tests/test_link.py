import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conekrahn.link import LinkSpec, link_spectrum, log_concavity_check, mu_lower_bound_check, shoot_cap
from oracles import cap_mu

# frozen from the Legendre-function oracle
MU_CAP_60 = 4.9360418654035257
MU_CAP_45 = 9.0396894886612656


def test_interval_closed_form():
    s = link_spectrum(LinkSpec.interval(math.pi / 2))
    assert s.mu == pytest.approx(4.0, abs=1e-14)
    t = np.linspace(0, math.pi / 2, 11)
    assert np.allclose(s.psi(t), math.sqrt(4 / math.pi) * np.sin(2 * t), atol=1e-14)
    assert s.normalization() == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("theta0,mu", [(math.pi / 3, MU_CAP_60), (math.pi / 4, MU_CAP_45), (math.pi / 2, 2.0)])
def test_cap_eigenvalue_frozen(theta0, mu):
    s = link_spectrum(LinkSpec.cap(theta0))
    assert abs(s.mu - mu) <= 1e-10 * mu


def test_cap_oracle_recomputes_frozen_value():
    assert abs(cap_mu(math.pi / 3) - MU_CAP_60) < 1e-14


def test_hemisphere_eigenfunction_is_cosine():
    s = link_spectrum(LinkSpec.cap(math.pi / 2))
    t = np.linspace(0, math.pi / 2, 101)
    assert np.max(np.abs(s.psi(t) - math.sqrt(3 / (2 * math.pi)) * np.cos(t))) < 1e-9


@pytest.mark.parametrize("spec", [LinkSpec.interval(1.0), LinkSpec.interval(2.5), LinkSpec.cap(0.7), LinkSpec.cap(1.2)])
def test_normalised_positive_and_dirichlet(spec):
    s = link_spectrum(spec)
    assert abs(s.normalization() - 1.0) <= 1e-10
    assert abs(s.normalization(panels=2000) - 1.0) <= 1e-9
    inner = s.theta[1:-1]
    assert np.all(np.asarray(s.psi(inner)) > 0)
    assert abs(s.psi(spec.angle)) < 1e-14


def test_cap_resolution_independence():
    a = link_spectrum(LinkSpec.cap(1.0), 256).mu
    b = link_spectrum(LinkSpec.cap(1.0), 1024).mu
    assert abs(a - b) < 1e-10 * b


def test_shooting_residual_of_the_ode():
    s = link_spectrum(LinkSpec.cap(math.pi / 3))
    t = np.linspace(0.2, 0.9, 8)
    lhs = np.asarray(s.d2psi(t)) + np.cos(t) / np.sin(t) * np.asarray(s.dpsi(t)) + s.mu * np.asarray(s.psi(t))
    assert np.max(np.abs(lhs)) < 1e-12
    h = 1e-4
    fd = (np.asarray(s.psi(t + h)) - 2 * np.asarray(s.psi(t)) + np.asarray(s.psi(t - h))) / h**2
    assert np.max(np.abs(fd - np.asarray(s.d2psi(t)))) < 1e-4


def test_shoot_sign_change_brackets_mu():
    assert shoot_cap(MU_CAP_60 - 0.01, math.pi / 3, 512) > 0
    assert shoot_cap(MU_CAP_60 + 0.01, math.pi / 3, 512) < 0


@pytest.mark.parametrize("kind,angle", [("interval", 0.0), ("interval", 3.5), ("cap", 1.7), ("cap", -0.2), ("disc", 1.0)])
def test_invalid_specs(kind, angle):
    with pytest.raises(ValueError):
        LinkSpec(kind, angle)


def test_theta_outside_link_rejected():
    s = link_spectrum(LinkSpec.interval(1.0))
    with pytest.raises(ValueError):
        s.psi(1.1)


def test_mu_lower_bound():
    r = mu_lower_bound_check(link_spectrum(LinkSpec.cap(1.0)))
    assert r.passed and r.lhs > 2
    r = mu_lower_bound_check(link_spectrum(LinkSpec.interval(2.0)))
    assert r.passed and r.lhs > 1
    r = mu_lower_bound_check(link_spectrum(LinkSpec.cap(math.pi / 2)))
    assert r.skipped and not r.passed


@pytest.mark.parametrize("spec", [LinkSpec.interval(math.pi / 2), LinkSpec.interval(math.pi), LinkSpec.cap(math.pi / 3), LinkSpec.cap(math.pi / 2)])
def test_log_concavity(spec):
    r = log_concavity_check(link_spectrum(spec))
    assert r.passed, r.line()


def test_log_concavity_detects_violation():
    s = link_spectrum(LinkSpec.interval(1.0))
    bumpy = s.psi_samples * (1 + 0.2 * np.sin(40 * s.theta))
    from dataclasses import replace

    r = log_concavity_check(replace(s, psi_samples=bumpy))
    assert not r.passed


@given(st.floats(0.3, math.pi / 2))
def test_cap_mu_exceeds_two_and_decreases(theta0):
    mu = link_spectrum(LinkSpec.cap(theta0), 128).mu
    mu_wider = link_spectrum(LinkSpec.cap(min(theta0 * 1.05, math.pi / 2)), 128).mu
    assert mu >= 2 - 1e-9
    assert mu_wider <= mu + 1e-9

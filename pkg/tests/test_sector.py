import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conekrahn.sector import (
    radial_profile,
    sector_eigenvalue,
    sector_eigenvalue_from_volume,
    sector_ode_residual,
    sector_spectrum,
)
from conekrahn.weight import sector_weighted_volume
from oracles import bessel_zero, tan_root


def test_quarter_sector_value(quarter):
    assert sector_eigenvalue(quarter, 1.0) == pytest.approx(bessel_zero(2) ** 2, rel=1e-12)
    assert sector_eigenvalue(quarter, 1.0) == pytest.approx(26.374616427163392, rel=1e-13)


def test_hemisphere_sector_value(hemi):
    assert sector_eigenvalue(hemi, 1.0) == pytest.approx(tan_root() ** 2, rel=1e-9)


def test_scaling(geom):
    assert sector_eigenvalue(geom, 2.0) == pytest.approx(sector_eigenvalue(geom, 1.0) / 4, rel=1e-14)


@given(st.floats(0.1, 10.0))
def test_volume_form_agrees(r0):
    from conekrahn.weight import cone

    g = cone(interval=math.pi / 2)
    V = sector_weighted_volume(g, r0)
    assert sector_eigenvalue_from_volume(g, V) == pytest.approx(sector_eigenvalue(g, r0), rel=1e-12)


def test_radial_ode_residual(geom):
    s = sector_spectrum(geom, 1.0)
    f = radial_profile(geom, s.lambda1)
    for r in np.linspace(0.05, 0.95, 19):
        assert abs(sector_ode_residual(geom, s.lambda1, f, r)) < 1e-8


def test_wrong_eigenvalue_leaves_residual(quarter):
    s = sector_spectrum(quarter, 1.0)
    f = radial_profile(quarter, s.lambda1)
    assert abs(sector_ode_residual(quarter, 1.1 * s.lambda1, f, 0.5)) > 1e-3


def test_eigenfunction_boundary_values(geom):
    s = sector_spectrum(geom, 1.3)
    ext = geom.link.extent
    assert abs(s.eigenfunction(1.3, 0.4 * ext)) < 1e-12
    assert abs(s.eigenfunction(0.6, ext)) < 1e-14
    assert s.eigenfunction(0.0, 0.4 * ext) == 0.0
    assert s.eigenfunction(0.6, 0.4 * ext) > 0


def test_invalid_inputs(quarter):
    with pytest.raises(ValueError):
        sector_eigenvalue(quarter, 0.0)
    with pytest.raises(ValueError):
        sector_eigenvalue_from_volume(quarter, -1.0)

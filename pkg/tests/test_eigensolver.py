import json
import math

import numpy as np
import pytest
import scipy.sparse as sp

from conekrahn.eigensolver import (
    ConvergenceError,
    assemble_operator,
    coarea_profile,
    domain_eigenvalue,
    smallest_eigenpair,
    tensor_grid,
    test_function_identity,
)
from conekrahn.geometry import RadialGraphDomain, weighted_volume
from conekrahn.report import dumps
from conekrahn.sector import sector_eigenvalue


def laplacian_1d(m):
    h = math.pi / (m + 1)
    K = sp.diags([-np.ones(m - 1), 2 * np.ones(m), -np.ones(m - 1)], [-1, 0, 1]) / h
    return K, np.full(m, h)


def test_one_dimensional_dirichlet():
    K, M = laplacian_1d(800)
    r = smallest_eigenpair(K, M)
    assert r.eigenvalue == pytest.approx(1.0, abs=1e-5)
    assert r.residual < 1e-8


def test_mass_scaling():
    K, M = laplacian_1d(200)
    a = smallest_eigenpair(K, M).eigenvalue
    b = smallest_eigenpair(K, 4 * M).eigenvalue
    assert b == pytest.approx(a / 4, rel=1e-10)


def test_eigenvector_is_positive_and_normalised():
    K, M = laplacian_1d(300)
    r = smallest_eigenpair(K, M)
    assert np.all(r.vector > 0)
    assert r.vector @ (M * r.vector) == pytest.approx(1.0, rel=1e-12)
    rq = r.vector @ (K @ r.vector)
    assert rq == pytest.approx(r.eigenvalue, rel=1e-10)


def test_rejects_bad_mass():
    K, M = laplacian_1d(10)
    with pytest.raises(ValueError):
        smallest_eigenpair(K, -M)
    with pytest.raises(ValueError):
        smallest_eigenpair(K, M[:-1])


def test_iteration_budget():
    K, M = laplacian_1d(100)
    with pytest.raises(ConvergenceError):
        smallest_eigenpair(K, M, maxiter=1)


def test_operator_structure(geom):
    d = RadialGraphDomain.sector(geom, 1.0)
    grid = tensor_grid(d, 32)
    K, M, index = assemble_operator(d, grid)
    assert abs(K - K.T).max() < 1e-14 * abs(K).max()
    assert np.all(M > 0)
    assert np.all(K.diagonal() > 0)
    off = K - sp.diags(K.diagonal())
    assert off.max() <= 0
    # rows lose mass only to Dirichlet neighbours
    assert np.all(np.asarray(K.sum(axis=1)).ravel() >= -1e-12 * abs(K).max())
    assert index.max() + 1 == K.shape[0] == grid.unknowns


def test_mass_sums_to_domain_measure(quarter):
    d = RadialGraphDomain.sector(quarter, 1.0)
    grid = tensor_grid(d, 128)
    _, M, _ = assemble_operator(d, grid)
    assert M.sum() == pytest.approx(math.pi / 4, rel=2e-2)


def test_grid_resolution_guard(quarter):
    d = RadialGraphDomain.sector(quarter, 1.0)
    with pytest.raises(ValueError):
        tensor_grid(d, 3)
    with pytest.raises(ValueError):
        tensor_grid(d, 32, r_max=0.5)


def test_sector_second_order(quarter):
    d = RadialGraphDomain.sector(quarter, 1.0)
    exact = sector_eigenvalue(quarter, 1.0)
    res = domain_eigenvalue(d, 64)
    assert abs(res.details["base_eigenvalue"] - exact) < 1e-2 * exact
    assert abs(res.eigenvalue - exact) < 1e-4 * exact
    assert res.order > 1.7


def test_scaling_of_domain(quarter):
    d = RadialGraphDomain.sector(quarter, 1.0)
    a = domain_eigenvalue(d, 48, extrapolate=False).eigenvalue
    b = domain_eigenvalue(d.scaled(2.0), 48, extrapolate=False).eigenvalue
    assert b == pytest.approx(a / 4, rel=1e-10)


def test_domain_monotonicity(cap60):
    ext = cap60.link.extent
    small = RadialGraphDomain.from_function(cap60, lambda t: 1 - 0.2 * np.cos(math.pi * t / ext) ** 2)
    big = RadialGraphDomain.sector(cap60, 1.0)
    ls = domain_eigenvalue(small, 64, extrapolate=False).eigenvalue
    lb = domain_eigenvalue(big, 64, extrapolate=False).eigenvalue
    assert ls > lb


def test_energy_identity_converges(geom):
    d = RadialGraphDomain.sector(geom, 1.0)
    v = lambda r, t: np.where(r < 0.8, np.cos(math.pi * r / 1.6) ** 2, 0.0) * (1 + 0.2 * r * r)
    errs = [test_function_identity(d, v, m, tol=1.0).details["relative_difference"] for m in (64, 128)]
    assert errs[1] < errs[0] / 3
    assert test_function_identity(d, v, 256).passed


def test_coarea_profile(quarter):
    d = RadialGraphDomain.sector(quarter, 1.0)
    res = domain_eigenvalue(d, 128, extrapolate=False)
    t, zeta = coarea_profile(d, res)
    assert np.all(np.diff(zeta) <= 0)
    assert zeta[0] == pytest.approx(weighted_volume(d), rel=2e-3)
    assert zeta[-1] >= 0


def test_coarea_requires_vector(quarter):
    d = RadialGraphDomain.sector(quarter, 1.0)
    res = domain_eigenvalue(d, 32, extrapolate=False)
    res.vector = None
    with pytest.raises(ValueError):
        coarea_profile(d, res)


def test_result_serialises(quarter):
    res = domain_eigenvalue(RadialGraphDomain.sector(quarter, 1.0), 32)
    d = json.loads(dumps(res.to_dict()))
    assert d["lambda"] == res.eigenvalue
    assert len(d["details"]["levels"]) == 3
    assert "vector" in json.loads(dumps(res.to_dict(include_vector=True)))

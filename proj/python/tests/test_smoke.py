import math

import numpy as np
import pytest

import lowreg as lr


def test_mode_and_norms():
    f = lr.mode(32, 3, 2.0)
    assert f.coeff(3) == 2.0
    assert math.isclose(lr.sobolev_norm(f, 1.0), 2.0 * math.sqrt(10.0), rel_tol=1e-14)
    assert math.isclose(lr.lebesgue_norm(f, 2.0), 2.0 * math.sqrt(2 * math.pi), rel_tol=1e-13)
    c = f.coeffs
    assert isinstance(c, np.ndarray) and c.shape == (32,)


def test_free_flow_is_unitary():
    u = lr.random_rough_field(256, theta=1.0, delta=0.01, seed=3)
    n0 = lr.sobolev_norm(u, 0.0)
    assert math.isclose(lr.sobolev_norm(lr.free_flow(u, 0.37), 0.0), n0, rel_tol=1e-13)


def test_lri_constant_data():
    u = lr.lri_step(lr.mode(16, 0, 1.0), 0.1, 1)
    assert abs(u.coeff(0) - complex(1.0, -0.1)) < 1e-15


def test_corrected_lie_constant_data():
    u = lr.SpectralField(16, [0] * 8 + [1.0] + [0] * 7, True)
    v = lr.SpectralField(16, [0] * 16, True)
    w = lr.corrected_lie_step(lr.WaveState(u, v), 0.1, "quadratic")
    assert abs(w.u.coeff(0) - 1.005) < 1e-14
    assert abs(w.v.coeff(0) - 0.1) < 1e-14


def test_fit_rate():
    taus = [2.0 ** -e for e in range(4, 11)]
    slope, r2 = lr.fit_rate([(t, 3 * t * t) for t in taus])
    assert math.isclose(slope, 2.0, abs_tol=1e-12)
    assert math.isclose(r2, 1.0, abs_tol=1e-12)
    with pytest.raises(ValueError):
        lr.fit_rate([(0.1, 0.1)])


def test_small_study():
    rep = lr.run_convergence_study("nls", "2^-3..2^-7", 32, data="smooth", ref_factor=16)
    assert len(rep["errors"]) == 5
    assert 0.85 <= rep["fitted_order"] <= 1.15
    assert rep["validation"]["passed"]


def test_errors_map_to_exceptions():
    with pytest.raises(lr.ConfigError):
        lr.parse_tau_list("2^-x")
    with pytest.raises(lr.ValidationError):
        lr.run_convergence_study("nls", "2^-3..2^-4", 32, data="smooth", ref_factor=16,
                                 cross_val_tol=1e-12)

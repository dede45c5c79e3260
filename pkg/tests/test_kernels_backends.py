"""The compiled and pure kernel twins must agree to rounding error."""

import numpy as np
import pytest

from bridgelab._kernels import BACKEND, pure

native = pytest.importorskip(
    "bridgelab._kernels._native", reason="compiled kernel extension not built"
)


def test_backend_selected():
    assert BACKEND in ("native", "pure")


def test_log_iv_scaled_agreement():
    rng = np.random.default_rng(11)
    worst = 0.0
    for _ in range(3000):
        nu = rng.uniform(-0.5, 5.0)
        z = rng.uniform(0.0, 80.0)
        a = pure.log_iv_scaled(nu, z)
        b = native.log_iv_scaled(nu, z)
        worst = max(worst, abs(a - b) / max(abs(a), 1.0))
    assert worst < 5e-14


def test_regime_functions_agree():
    for nu in (0.0, 0.5, 1.5, 3.0):
        z = native.iv_crossover(nu)
        assert pure.iv_crossover(nu) == z
        assert pure.log_iv_scaled_series(nu, z) == pytest.approx(
            native.log_iv_scaled_series(nu, z), rel=5e-14
        )
        assert pure.log_iv_scaled_asymptotic(nu, z) == pytest.approx(
            native.log_iv_scaled_asymptotic(nu, z), rel=5e-14
        )


def test_radial_kernel_agreement():
    rng = np.random.default_rng(12)
    for _ in range(500):
        nu = rng.uniform(-0.5, 3.0)
        tau = rng.uniform(0.01, 4.0)
        m = rng.choice([0.0, rng.uniform(0.0, 6.0)])
        y = rng.choice([0.0, rng.uniform(0.0, 8.0)])
        a = pure.log_radial_kernel(nu, tau, m, y)
        b = native.log_radial_kernel(nu, tau, m, y)
        if a == -np.inf or b == -np.inf:
            assert a == b
        else:
            assert a == pytest.approx(b, rel=5e-14, abs=5e-13)


def test_array_matches_scalar_loop():
    ys = np.linspace(0.0, 9.0, 513)
    arr = native.log_radial_kernel_array(0.5, 0.7, 1.2, ys)
    ref = np.array([native.log_radial_kernel(0.5, 0.7, 1.2, y) for y in ys])
    assert np.array_equal(arr, ref)
    arr_p = pure.log_radial_kernel_array(0.5, 0.7, 1.2, ys)
    assert np.allclose(arr, arr_p, rtol=5e-14, atol=5e-13)


def test_validation_matches():
    for mod in (pure, native):
        with pytest.raises(ValueError):
            mod.log_iv_scaled(0.5, -1.0)
        with pytest.raises(ValueError):
            mod.log_radial_kernel(0.5, 0.0, 1.0, 1.0)
        with pytest.raises(ValueError):
            mod.log_radial_kernel(0.5, 1.0, -1.0, 1.0)


def test_boundary_values():
    for mod in (pure, native):
        assert mod.log_iv_scaled(0.0, 0.0) == 0.0
        assert mod.log_iv_scaled(1.0, 0.0) == -np.inf
        assert mod.log_iv_scaled(-0.5, 0.0) == np.inf
        assert mod.radial_kernel(0.5, 1.0, 1.0, 0.0) == 0.0  # d = 3 at the origin
        assert mod.radial_kernel(-0.5, 1.0, 0.0, 0.0) > 0.0  # d = 1 folded limit

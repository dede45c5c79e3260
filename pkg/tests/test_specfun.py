import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from bridgelab import specfun
from bridgelab.exceptions import DomainError


def half_integer_iv(nu, z):
    """Elementary closed forms of I_nu for nu in {-1/2, 1/2, 3/2}."""
    pref = math.sqrt(2.0 / (math.pi * z))
    if nu == -0.5:
        return pref * math.cosh(z)
    if nu == 0.5:
        return pref * math.sinh(z)
    if nu == 1.5:
        return pref * (math.cosh(z) - math.sinh(z) / z)
    raise ValueError(nu)


class TestGamma:
    def test_classical_values(self):
        assert specfun.gamma(1.0) == 1.0
        assert abs(specfun.gamma(0.5) - math.sqrt(math.pi)) < 1e-15
        assert specfun.gamma(5.0) == 24.0

    def test_relative_accuracy(self):
        # lgamma route vs direct for mid-range arguments
        for x in (0.1, 1.7, 3.25, 9.5, 30.0):
            ref = math.exp(math.lgamma(x))
            assert abs(specfun.gamma(x) - ref) / ref < 1e-13

    def test_domain(self):
        with pytest.raises(DomainError):
            specfun.gamma(0.0)
        with pytest.raises(DomainError):
            specfun.gamma(-2.5)


class TestBesselI:
    def test_at_zero(self):
        assert specfun.bessel_i(0.0, 0.0) == 1.0
        assert specfun.bessel_i(1.0, 0.0) == 0.0

    @pytest.mark.parametrize("z", [0.5, 1.0, 2.0])
    def test_half_integer_closed_form(self, z):
        for nu in (-0.5, 0.5, 1.5):
            ref = half_integer_iv(nu, z)
            assert abs(specfun.bessel_i(nu, z) - ref) / ref < 1e-12

    @pytest.mark.parametrize("nu", [0.0, 0.5, 1.0, 1.5])
    def test_small_argument_limit(self, nu):
        # z^-nu I_nu(z) -> 1 / (2^nu Gamma(nu+1)) as z -> 0
        ref = 1.0 / (2.0**nu * math.gamma(nu + 1.0))
        for z in (1e-6, 1e-8):
            val = specfun.bessel_i(nu, z) / z**nu
            assert abs(val - ref) / ref < 1e-10

    @pytest.mark.parametrize("nu", [0.0, 0.5, 1.0, 1.5, 2.0])
    def test_series_asymptotic_crossover_continuity(self, nu):
        from bridgelab import _kernels

        zs = specfun.bessel_series_asymptotic_crossover(nu)
        a = _kernels.log_iv_scaled_series(nu, zs)
        b = _kernels.log_iv_scaled_asymptotic(nu, zs)
        assert abs(math.exp(a) - math.exp(b)) / math.exp(a) < 1e-11

    def test_scaled_large_argument_envelope(self):
        # e^-z I_nu(z) stays within (0, (1+eps)/sqrt(2 pi z)] for large z
        for nu in (0.0, 0.5, 1.0, 2.0):
            for z in (25.0, 100.0, 1000.0):
                val = specfun.bessel_i_scaled(nu, z)
                assert 0.0 < val <= (1.0 + 1e-2) / math.sqrt(2.0 * math.pi * z)

    def test_scaled_consistency(self):
        for nu in (0.0, 1.5):
            for z in (0.5, 5.0, 50.0):
                ref = specfun.bessel_i(nu, z) * math.exp(-z)
                assert abs(specfun.bessel_i_scaled(nu, z) - ref) / ref < 1e-12

    @settings(max_examples=40, deadline=None)
    @given(
        nu=st.sampled_from([0.0, 0.5, 1.0, 2.0, 3.5]),
        z=st.floats(min_value=1e-3, max_value=80.0),
        bump=st.floats(min_value=1e-3, max_value=5.0),
    )
    def test_strictly_increasing_in_z(self, nu, z, bump):
        assert specfun.bessel_i(nu, z + bump) > specfun.bessel_i(nu, z)

    def test_negative_order_diverges_at_origin(self):
        # I_nu ~ z^nu / (2^nu Gamma(nu+1)) blows up at 0+ for nu < 0, so the
        # function cannot be increasing on all of (0, inf) there; it is
        # increasing past its single minimum.
        assert specfun.bessel_i(-0.5, 1e-4) > specfun.bessel_i(-0.5, 0.5)
        zs = np.linspace(1.5, 60.0, 200)
        vals = [specfun.bessel_i(-0.5, z) for z in zs]
        assert all(b > a for a, b in zip(vals, vals[1:]))

    def test_domain(self):
        with pytest.raises(DomainError):
            specfun.bessel_i(0.0, -1.0)
        with pytest.raises(DomainError):
            specfun.bessel_i(-0.75, 1.0)


class TestSinePowerIntegral:
    def test_stated_values(self):
        assert specfun.sine_power_integral(1) == 2.0
        assert abs(specfun.sine_power_integral(2) - math.pi / 2.0) < 1e-15
        assert abs(specfun.sine_power_integral(3) - 4.0 / 3.0) < 1e-15

    def test_zero_power_convention(self):
        # int_0^pi sin^0 = pi; documented convention, not an error
        assert specfun.sine_power_integral(0) == math.pi

    @pytest.mark.parametrize("k", range(1, 9))
    def test_quadrature_oracle(self, k):
        ref, _ = quad(lambda t: math.sin(t) ** k, 0.0, math.pi, epsabs=1e-13)
        assert abs(specfun.sine_power_integral(k) - ref) < 1e-11

    def test_domain(self):
        with pytest.raises(DomainError):
            specfun.sine_power_integral(-1)


class TestGr8431:
    @pytest.mark.parametrize(
        "nu,c", [(0.0, 1.0), (0.5, 1.0), (1.0, 5.0)]
    )
    def test_examples(self, nu, c):
        assert specfun.gr8431_check(nu, c) < 1e-9

    def test_full_grid(self):
        worst = 0.0
        for nu in (0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0):
            for c in (0.1, 1.0, 10.0):
                worst = max(worst, specfun.gr8431_check(nu, c))
        assert worst < 1e-9

    def test_half_integer_reduction(self):
        # nu = 1/2: RHS reduces to 2 sinh(c)/c
        lhs, _ = quad(lambda t: math.sin(t) * math.exp(math.cos(t)), 0.0, math.pi)
        assert abs(lhs - 2.0 * math.sinh(1.0)) < 1e-12

    def test_domain(self):
        with pytest.raises(DomainError):
            specfun.gr8431_check(-0.5, 1.0)
        with pytest.raises(DomainError):
            specfun.gr8431_check(1.0, 0.0)


def test_double_factorial():
    assert specfun.double_factorial(-1) == 1.0
    assert specfun.double_factorial(0) == 1.0
    assert specfun.double_factorial(5) == 15.0
    assert specfun.double_factorial(6) == 48.0

import math

import numpy as np
import pytest
from scipy.integrate import quad

from bridgelab import bridges, models, verify
from bridgelab.bridges import (
    BridgeSpec,
    GaussianBridge,
    RadialBridge,
    RadialLimitBridge,
    RatioBridge,
)
from bridgelab.exceptions import ConstructionInapplicableError, DomainError
from bridgelab.models import Bessel, OuMatrix, OuRadial, OuScalar, Wiener, kappa
from bridgelab.specfun import bessel_i, gamma


def pinned_norm_display(a, sigma, d, T, s, t, x, y):
    """Independent transcription of the pinned-norm closed form.

    Prefactor/Bessel/exponent product, assembled in linear space (test points
    keep every factor in range).  The x = 0 branch carries the e^(2a(T-t))
    weight on the y^2 term; without it the x -> 0 limit of the x > 0 branch
    would not match (checked in test_x_to_zero_continuity).
    """
    nu = 0.5 * d - 1.0
    s2 = sigma * sigma
    kts, kTt, kTs = s2 * kappa(a, t - s), s2 * kappa(a, T - t), s2 * kappa(a, T - s)
    ratio = (kTs / kTt) ** (nu + 1.0)
    if x == 0.0:
        return (
            y ** (2.0 * nu + 1.0)
            / (2.0**nu * kts ** (nu + 1.0) * gamma(nu + 1.0))
            * ratio
            * math.exp(
                -y * y / (2.0 * kts)
                - math.exp(2.0 * a * (T - t)) * y * y / (2.0 * kTt)
            )
        )
    return (
        math.exp(-a * nu * (t - s))
        * y ** (nu + 1.0)
        / (kts * x**nu)
        * ratio
        * bessel_i(nu, math.exp(a * (t - s)) * x * y / kts)
        * math.exp(
            -(math.exp(2.0 * a * (t - s)) * x * x + y * y) / (2.0 * kts)
            - math.exp(2.0 * a * (T - t)) * y * y / (2.0 * kTt)
            + math.exp(2.0 * a * (T - s)) * x * x / (2.0 * kTs)
        )
    )


class TestWienerBridge:
    def test_midpoint_value(self):
        v = bridges.wiener_bridge_density(1, 1.0, 0.0, 0.5, [0.0], [0.0])
        assert abs(v - math.sqrt(2.0 / math.pi)) < 1e-15

    def test_equals_ratio_construction(self, rng):
        spec = BridgeSpec(Wiener(2), np.zeros(2), np.zeros(2), 1.0)
        for _ in range(25):
            s = rng.uniform(0.0, 0.7)
            t = rng.uniform(s + 0.05, 0.97)
            x, y = rng.normal(size=2), rng.normal(size=2)
            r = bridges.bridge_density_ratio(spec, s, t, x, y)
            c = bridges.wiener_bridge_density(2, 1.0, s, t, x, y)
            assert abs(r - c) / c < 1e-12

    def test_time_reversal_symmetry(self):
        # with both endpoints pinned at zero: p_{0,t}(0, y) = p_{0,T-t}(0, y)
        for t in (0.2, 0.35):
            a = bridges.wiener_bridge_density(1, 1.0, 0.0, t, [0.0], [0.7])
            b = bridges.wiener_bridge_density(1, 1.0, 0.0, 1.0 - t, [0.0], [0.7])
            assert abs(a - b) / a < 1e-14

    def test_normalization(self):
        resid = verify.normalization_check(
            GaussianBridge(BridgeSpec(Wiener(1), np.zeros(1), np.zeros(1), 1.0)),
            0.2,
            0.8,
            np.array([0.4]),
        )
        assert resid < 1e-8

    def test_endpoint_concentration(self):
        gb = GaussianBridge(BridgeSpec(Wiener(2), np.zeros(2), np.zeros(2), 1.0))
        for delta in (0.1, 0.01):
            masses = [
                verify.endpoint_mass(gb, 0.0, np.array([0.3, 0.2]), t, delta)
                for t in (0.9, 0.99, 0.999)
            ]
            assert masses[0] < masses[1] < masses[2]

    def test_time_order_domain_error(self):
        with pytest.raises(DomainError):
            bridges.wiener_bridge_density(1, 1.0, 0.6, 0.4, [0.0], [0.0])


class TestRatioConstruction:
    def test_vanishing_endpoint_raises(self):
        spec = BridgeSpec(Bessel(3), 0.0, 0.0, 1.0)
        with pytest.raises(ConstructionInapplicableError):
            bridges.bridge_density_ratio(spec, 0.0, 0.5, 1.0, 1.0)

    def test_d1_zero_endpoint_applies_and_matches_limit(self, rng):
        # the folded kernel is positive at zero, so both constructions apply
        spec = BridgeSpec(Bessel(1), 0.0, 0.0, 1.0)
        for _ in range(10):
            s = rng.uniform(0.0, 0.6)
            t = rng.uniform(s + 0.05, 0.95)
            x, y = rng.uniform(0.0, 2.0, size=2)
            r = bridges.bridge_density_ratio(spec, s, t, x, y)
            l = bridges.bridge_density_radial_limit(spec, s, t, x, y)
            assert abs(r - l) <= 1e-12 * max(r, 1e-300)

    def test_nonzero_endpoint_radial(self):
        # ratio construction works for radial bases pinned away from zero
        spec = BridgeSpec(Bessel(3), 0.5, 1.2, 1.0)
        kern = RatioBridge(spec)
        resid = verify.normalization_check(kern, 0.1, 0.6, 0.8)
        assert resid < 1e-8

    def test_endpoint_concentration_via_ratio(self):
        spec = BridgeSpec(Wiener(1), np.zeros(1), np.zeros(1), 1.0)
        kern = RatioBridge(spec)
        masses = []
        for t in (0.9, 0.99, 0.999):
            val, _ = quad(
                lambda y: kern.density(0.0, t, np.array([0.5]), np.array([y])),
                -0.1,
                0.1,
                epsabs=1e-12,
            )
            masses.append(val)
        assert masses[0] < masses[1] < masses[2]


class TestOuBridge:
    def test_zero_drift_is_wiener(self):
        x, y = np.array([0.3, 0.2]), np.array([0.5, -0.1])
        z = bridges.ou_bridge_density(np.zeros((2, 2)), np.eye(2), 1.0, 0.1, 0.4, x, y)
        w = bridges.wiener_bridge_density(2, 1.0, 0.1, 0.4, x, y)
        assert abs(z - w) / w < 1e-12

    def test_isotropic_drift_matches_scalar_display(self, rng):
        a, sigma = -0.6, 1.2
        om = OuMatrix(a * np.eye(2), sigma * np.eye(2))
        for _ in range(10):
            s = rng.uniform(0.0, 0.6)
            t = rng.uniform(s + 0.05, 0.95)
            x, y = rng.normal(size=2), rng.normal(size=2)
            va = bridges.ou_bridge_density(om.A, om.Sigma, 1.0, s, t, x, y, model=om)
            vb = bridges.ou_scalar_bridge_density(a, sigma, 2, 1.0, s, t, x, y)
            assert abs(va - vb) / vb < 1e-10

    def test_equals_ratio_construction(self, rng, stable_matrix):
        om = OuMatrix(stable_matrix, np.eye(2))
        spec = BridgeSpec(om, np.zeros(2), np.zeros(2), 1.0)
        for _ in range(10):
            s = rng.uniform(0.0, 0.5)
            t = rng.uniform(s + 0.1, 0.95)
            x, y = rng.normal(size=2), rng.normal(size=2)
            r = bridges.bridge_density_ratio(spec, s, t, x, y)
            c = bridges.ou_bridge_density(stable_matrix, np.eye(2), 1.0, s, t, x, y, model=om)
            assert abs(r - c) / c < 1e-10

    def test_kc_via_quadrature(self, stable_matrix):
        om = OuMatrix(stable_matrix, np.eye(2))
        gb = GaussianBridge(BridgeSpec(om, np.zeros(2), np.zeros(2), 1.0))
        resid = verify.kc_check(gb, 0.1, 0.4, 0.8, np.array([0.2, -0.1]), np.array([0.3, 0.2]))
        assert resid < 1e-7

    def test_scalar_bridge_equals_ratio(self, rng):
        spec = BridgeSpec(OuScalar(-0.8, 1.3, 2), np.zeros(2), np.zeros(2), 2.0)
        for _ in range(10):
            s = rng.uniform(0.0, 1.2)
            t = rng.uniform(s + 0.1, 1.9)
            x, y = rng.normal(size=2), rng.normal(size=2)
            r = bridges.bridge_density_ratio(spec, s, t, x, y)
            c = bridges.ou_scalar_bridge_density(-0.8, 1.3, 2, 2.0, s, t, x, y)
            assert abs(r - c) / c < 1e-10


class TestRadialBridge:
    def test_matches_display_transcription(self, rng):
        for a, sigma, d, T in [(0.0, 1.0, 2, 1.0), (-0.8, 1.3, 3, 2.0), (0.5, 0.7, 1, 1.0)]:
            for _ in range(15):
                s = rng.uniform(0.0, 0.7 * T)
                t = rng.uniform(s + 0.05 * T, 0.95 * T)
                x = rng.choice([0.0, rng.uniform(0.1, 3.0)])
                y = rng.uniform(0.05, 3.0)
                got = bridges.radial_bridge_density(a, sigma, d, T, s, t, x, y)
                ref = pinned_norm_display(a, sigma, d, T, s, t, float(x), float(y))
                assert abs(got - ref) / ref < 1e-10

    def test_unit_params_reduce_to_brownian_case(self, rng):
        # a = 0, sigma = 1 gives the Brownian pinned-norm displays
        for _ in range(10):
            s = rng.uniform(0.0, 0.6)
            t = rng.uniform(s + 0.05, 0.95)
            x, y = rng.uniform(0.0, 3.0, size=2)
            got = bridges.radial_bridge_density(0.0, 1.0, 3, 1.0, s, t, x, y)
            ref = pinned_norm_display(0.0, 1.0, 3, 1.0, s, t, float(x), float(y))
            assert got == pytest.approx(ref, rel=1e-10)

    def test_x_to_zero_continuity(self):
        # the x = 0 branch must be the limit of the x > 0 branch
        a, sigma, d, T, s, t, y = 0.5, 0.7, 3, 2.0, 0.2, 1.1, 1.3
        at_zero = bridges.radial_bridge_density(a, sigma, d, T, s, t, 0.0, y)
        near_zero = bridges.radial_bridge_density(a, sigma, d, T, s, t, 1e-8, y)
        assert abs(near_zero - at_zero) / at_zero < 1e-7

    def test_commutation_at_random_points(self, rng):
        for a, sigma, d, T in [(0.0, 1.0, 2, 1.0), (-0.8, 1.3, 2, 2.0), (0.5, 0.7, 3, 1.0)]:
            base = Bessel(d) if (a == 0.0 and sigma == 1.0) else OuRadial(a, sigma, d)
            spec = BridgeSpec(base, 0.0, 0.0, T)
            for _ in range(50):
                s = rng.uniform(0.0, 0.8 * T)
                t = rng.uniform(s + 0.02 * T, 0.98 * T)
                x, y = rng.uniform(0.0, 4.0, size=2)
                va = bridges.radial_bridge_density(a, sigma, d, T, s, t, x, y)
                vb = bridges.bridge_density_radial_limit(spec, s, t, x, y)
                if va > 1e-300 or vb > 1e-300:
                    assert abs(va - vb) / max(va, vb) < 1e-10

    def test_normalization(self):
        rb = RadialBridge(0.5, 0.7, 3, 2.0)
        for s, t in [(0.0, 1.0), (0.4, 1.9)]:
            resid = verify.normalization_check(rb, s, t, 1.2)
            assert resid < 1e-8

    def test_limit_normalization(self):
        kern = RadialLimitBridge(BridgeSpec(OuRadial(-1.0, 1.0, 3), 0.0, 0.0, 1.0))
        resid = verify.normalization_check(kern, 0.1, 0.6, 0.9)
        assert resid < 1e-7

    def test_epsilon_sequence_oracle(self, rng):
        # the analytic limit agrees with Richardson-extrapolated shrinking
        for model in (Bessel(2), OuRadial(0.5, 0.7, 3)):
            for _ in range(10):
                T = 1.0
                s = rng.uniform(0.0, 0.5)
                t = rng.uniform(s + 0.1, 0.9)
                x, y = rng.uniform(0.0, 2.0, size=2)
                num = verify.epsilon_ratio_limit(model, T, s, t, x, y)
                ana = verify.analytic_ratio_limit(model, T, s, t, x, y)
                assert abs(num - ana) / abs(ana) < 1e-6

    def test_limit_requires_zero_endpoint(self):
        spec = BridgeSpec(Bessel(2), 0.0, 0.7, 1.0)
        with pytest.raises(ConstructionInapplicableError):
            bridges.bridge_density_radial_limit(spec, 0.0, 0.5, 1.0, 1.0)

    def test_endpoint_concentration(self):
        rb = RadialBridge(-0.8, 1.3, 2, 1.0)
        for delta in (0.1, 0.01):
            masses = [verify.endpoint_mass(rb, 0.0, 0.6, t, delta) for t in (0.9, 0.99, 0.999)]
            assert masses[0] < masses[1] < masses[2]


class TestBallLimitOracle:
    """Monte Carlo shrinking-ball construction as an independent oracle."""

    @staticmethod
    def ball_ratio(base, T, s, t, x, y, eps, n, rng):
        # E-ball integrals of the endpoint densities by uniform-in-ball MC
        d = base.d
        pts = rng.normal(size=(n, d))
        pts /= np.linalg.norm(pts, axis=1, keepdims=True)
        radii = eps * rng.random(n) ** (1.0 / d)
        Z = pts * radii[:, None]
        num = np.exp(base.log_density_many_y(T - t, y, Z)).mean()
        den = np.exp(base.log_density_many_y(T - s, x, Z)).mean()
        return num / den

    def test_wiener_ball_limit_matches_closed_form(self):
        rng = np.random.default_rng(777)
        base = Wiener(2)
        T, s, t = 1.0, 0.1, 0.6
        x = np.array([0.4, -0.2])
        y = np.array([0.3, 0.5])
        vals = [
            self.ball_ratio(base, T, s, t, x, y, eps, 400_000, rng)
            for eps in (0.2, 0.1)
        ]
        # leading ball-average correction is O(eps^2): one Richardson level
        extrap = (4.0 * vals[1] - vals[0]) / 3.0
        approx = base.density(t - s, x, y) * extrap
        ref = bridges.wiener_bridge_density(2, T, s, t, x, y)
        assert abs(approx - ref) / ref < 5e-3


def test_bridge_spec_validation():
    with pytest.raises(DomainError):
        BridgeSpec(Wiener(2), np.zeros(2), np.zeros(2), 0.0)
    with pytest.raises(DomainError):
        BridgeSpec(Bessel(2), -1.0, 0.0, 1.0)
    with pytest.raises(DomainError):
        BridgeSpec(Wiener(2), np.zeros(3), np.zeros(2), 1.0)
    with pytest.raises(DomainError):
        GaussianBridge(BridgeSpec(Wiener(1), np.zeros(1), np.ones(1), 1.0))

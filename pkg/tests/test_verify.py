import json
import math

import numpy as np
import pytest

from bridgelab import bridges, models, verify
from bridgelab.bridges import BridgeSpec, GaussianBridge, RadialBridge
from bridgelab.exceptions import DomainError
from bridgelab.models import Bessel, OuMatrix, OuRadial, OuScalar, Wiener
from bridgelab.quadrature import QuadratureConfig, integrate_halfline


class TestIntegrateHalfline:
    def test_exponential(self):
        assert abs(integrate_halfline(lambda x: math.exp(-x)) - 1.0) < 1e-12

    def test_rayleigh(self):
        assert abs(integrate_halfline(lambda x: x * math.exp(-0.5 * x * x)) - 1.0) < 1e-12

    def test_radial_kernel_normalization(self):
        m = Bessel(3)
        resid = abs(
            integrate_halfline(lambda y: m.density(1.0, 2.0, y), upper=m.y_window(1.0, 2.0))
            - 1.0
        )
        assert resid < 1e-9


class TestKcCheck:
    def test_wiener_d1(self):
        r = verify.kc_check(Wiener(1), 0.0, 0.5, 1.0, [0.0], [1.0])
        assert r < 1e-9

    def test_bessel_d3(self):
        r = verify.kc_check(Bessel(3), 0.0, 0.3, 1.0, 1.0, 2.0)
        assert r < 1e-7

    def test_ou_matrix(self, stable_matrix):
        om = OuMatrix(stable_matrix, np.eye(2))
        r = verify.kc_check(om, 0.0, 0.2, 0.7, [0.3, -0.1], [0.2, 0.4])
        assert r < 1e-6

    def test_residual_scales_with_tolerance(self):
        base = QuadratureConfig(rel_tol=1e-9)
        tight = QuadratureConfig(rel_tol=5e-10)
        r1 = verify.kc_check(Bessel(2), 0.0, 0.4, 1.0, 0.8, 1.5, base)
        r2 = verify.kc_check(Bessel(2), 0.0, 0.4, 1.0, 0.8, 1.5, tight)
        assert r2 <= 2.0 * r1 + 1e-14

    def test_requires_ordered_times(self):
        with pytest.raises(DomainError):
            verify.kc_check(Wiener(1), 0.5, 0.5, 1.0, [0.0], [0.0])


class TestBesselIdentity:
    @pytest.mark.parametrize(
        "alpha,beta,gamma,nu",
        [(1.0, 1.0, 1.0, 0.5), (0.1, 10.0, 2.0, 0.0)],
    )
    def test_examples(self, alpha, beta, gamma, nu):
        assert verify.bessel_identity_check(alpha, beta, gamma, nu) < 1e-8

    def test_half_integer_reduction(self):
        # nu = 1/2 right side reduces to elementary functions of sinh
        alpha = beta = gamma = 1.0
        lhs_closed = (
            1.0
            / (2.0 * gamma)
            * math.exp((alpha**2 + beta**2) / (4.0 * gamma))
            * math.sqrt(2.0 / (math.pi * alpha * beta / (2.0 * gamma)))
            * math.sinh(alpha * beta / (2.0 * gamma))
        )
        from bridgelab.specfun import bessel_i

        rhs = (
            1.0
            / (2.0 * gamma)
            * math.exp((alpha**2 + beta**2) / (4.0 * gamma))
            * bessel_i(0.5, alpha * beta / (2.0 * gamma))
        )
        assert abs(lhs_closed - rhs) / rhs < 1e-12

    def test_large_gamma_small_argument_limit(self):
        # both sides collapse to the leading z^nu order as gamma -> inf
        nu, alpha, beta, gamma = 1.0, 0.7, 1.3, 1e6
        assert verify.bessel_identity_check(alpha, beta, gamma, nu) < 1e-8
        log_rhs_limit = (
            -math.log(2.0 * gamma)
            + nu * math.log(alpha * beta / (4.0 * gamma))
            - math.lgamma(nu + 1.0)
        )
        from bridgelab import _kernels

        zc = alpha * beta / (2.0 * gamma)
        log_rhs = (
            -math.log(2.0 * gamma) + zc + _kernels.log_iv_scaled(nu, zc)
            + (alpha**2 + beta**2) / (4.0 * gamma)
        )
        assert abs(log_rhs - log_rhs_limit) < 1e-4

    def test_domain(self):
        with pytest.raises(DomainError):
            verify.bessel_identity_check(0.0, 1.0, 1.0, 0.5)


class TestCommutation:
    @pytest.mark.parametrize(
        "a,sigma,d,T",
        [(0.0, 1.0, 2, 1.0), (-0.8, 1.3, 3, 2.0), (0.5, 0.7, 1, 1.0)],
    )
    def test_examples(self, a, sigma, d, T):
        rep = verify.commutation_check(a, sigma, d, T)
        assert rep.passed
        assert rep.max_residual < 1e-10


class TestLemmaChecks:
    def test_kc_hypotheses_wiener(self):
        rep = verify.lemma_kc_hypotheses_check(Wiener(2), 0.7)
        assert rep.passed

    def test_kc_hypotheses_bessel(self):
        rep = verify.lemma_kc_hypotheses_check(Bessel(2), 0.7)
        assert rep.passed

    def test_kc_hypotheses_ou_matrix(self, stable_matrix):
        rep = verify.lemma_kc_hypotheses_check(OuMatrix(stable_matrix, np.eye(2)), 0.7)
        assert rep.passed
        # the first-argument integral witness is checked against det(e^-tA)
        names = [w["point"][0] for w in rep.witnesses]
        assert "x-integral" in names or rep.max_residual < 1e-8

    def test_bridge_limit_hypotheses(self):
        for model in (Bessel(2), OuRadial(-0.8, 1.3, 2)):
            rep = verify.lemma_bessel_bridge_hypotheses_check(model, 1.0)
            assert rep.passed, rep.witnesses


class TestReports:
    def test_serialization_schema(self):
        rep = verify.commutation_check(0.0, 1.0, 2, 1.0)
        doc = rep.to_dict()
        assert set(doc) == {
            "check",
            "params",
            "grid",
            "max_residual",
            "tolerance",
            "pass",
            "witnesses",
        }
        # round-trips through JSON without numpy leakage
        text = json.dumps(doc, sort_keys=True)
        assert json.loads(text)["pass"] is True
        for w in doc["witnesses"]:
            assert set(w) == {"point", "lhs", "rhs", "residual"}

    def test_reports_are_reproducible(self):
        r1 = verify.kc_check(Bessel(2), 0.0, 0.4, 1.0, 0.8, 1.5)
        r2 = verify.kc_check(Bessel(2), 0.0, 0.4, 1.0, 0.8, 1.5)
        assert r1 == r2
        a = verify.commutation_check(-0.8, 1.3, 2, 1.0)
        b = verify.commutation_check(-0.8, 1.3, 2, 1.0)
        assert a.max_residual == b.max_residual

    def test_pass_iff_within_tolerance(self):
        rep = verify.VerificationReport(
            check_name="x",
            grid_description="g",
            max_residual=2.0,
            tolerance=1.0,
            passed=False,
        )
        assert not rep.passed

    def test_unknown_suite(self):
        with pytest.raises(DomainError):
            verify.run_suite("nonsense")


def test_normalization_check_gaussian_and_radial():
    gb = GaussianBridge(BridgeSpec(Wiener(2), np.zeros(2), np.zeros(2), 1.0))
    assert verify.normalization_check(gb, 0.1, 0.7, np.array([0.4, -0.2])) < 1e-8
    rb = RadialBridge(0.5, 0.7, 3, 2.0)
    assert verify.normalization_check(rb, 0.3, 1.5, 0.8) < 1e-8

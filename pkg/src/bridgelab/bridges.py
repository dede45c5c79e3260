"""Bridge transition kernels: ratio construction, vanishing-endpoint limit
construction, and the closed forms they reduce to.

A bridge from a to b over [0, T] is the base process conditioned on hitting b
at time T; its two-time transition densities are

    p_{s,t}(x, y) = p_{t-s}(x, y) p_{T-t}(y, b) / p_{T-s}(x, b),

whenever the denominator is positive.  For radial kernels pinned at b = 0 in
dimension >= 2 the denominator vanishes and the construction is replaced by
the one-sided limit

    p_{s,t}(x, y) = p_{t-s}(x, y) lim_{e->0} p_{T-t}(y, e) / p_{T-s}(x, e),

which this module evaluates analytically from the small-argument behaviour
z^-nu I_nu(z) -> 1 / (2^nu Gamma(nu+1)); no numerical shrinking of epsilon
happens in library code (an epsilon-sequence evaluator exists in `verify` as
a certification oracle only).

The closed forms: the pinned Gaussian process makes one-step Gaussian
transitions Y | X = x ~ N(M x, C) (endpoints zero), and the norm of a pinned
isotropic process makes radial-kernel transitions at

    v = sigma^2 k(t-s) k(T-t) / k(T-s),   m = e^(a (t-s)) k(T-t)/k(T-s) x,

with k(u) = kappa(a, u).  Comparing this "norm of the bridge" kernel with the
"bridge of the norm" limit construction is the headline commutation check in
`verify`: the two coincide for endpoints zero.
"""

import math

import numpy as np

from .exceptions import ConstructionInapplicableError, DomainError
from .models import (
    Bessel,
    FullTransition,
    IsotropicTransition,
    OuMatrix,
    OuRadial,
    OuScalar,
    RadialTransition,
    Wiener,
    _as_radial,
    _as_vector,
    _finite_exp,
    kappa,
)

__all__ = [
    "BridgeSpec",
    "bridge_density_ratio",
    "bridge_density_radial_limit",
    "wiener_bridge_density",
    "ou_bridge_density",
    "ou_scalar_bridge_density",
    "radial_bridge_density",
    "GaussianBridge",
    "RadialBridge",
    "RadialLimitBridge",
    "RatioBridge",
]

_LOG_2PI = 1.8378770664093453

_GAUSSIAN_BASES = (Wiener, OuScalar, OuMatrix)
_RADIAL_BASES = (Bessel, OuRadial)


def _check_times(s, t, T):
    if not (0.0 <= s < t < T):
        raise DomainError(f"times must satisfy 0 <= s < t < T, got s={s}, t={t}, T={T}")


class BridgeSpec:
    """Base process plus endpoints (a, b) and horizon T."""

    def __init__(self, base, start_a, end_b, horizon_T):
        if horizon_T <= 0.0:
            raise DomainError("horizon must be positive")
        if isinstance(base, _RADIAL_BASES):
            start_a = _as_radial(start_a, "start endpoint")
            end_b = _as_radial(end_b, "end endpoint")
        elif isinstance(base, _GAUSSIAN_BASES):
            start_a = _as_vector(start_a, base.d, "start endpoint")
            end_b = _as_vector(end_b, base.d, "end endpoint")
        else:
            raise DomainError(f"unsupported base process {type(base).__name__}")
        self.base = base
        self.start_a = start_a
        self.end_b = end_b
        self.horizon_T = float(horizon_T)

    @property
    def space(self):
        return self.base.state_space

    def pinned_at_zero(self):
        return bool(np.all(np.asarray(self.end_b) == 0.0))


def _scalar_params(base):
    """(a, sigma, d) of a radial base; the Brownian norm is the (0, 1) case."""
    if isinstance(base, Bessel):
        return 0.0, 1.0, base.d
    return base.a, base.sigma, base.d


# ---------------------------------------------------------------------------
# ratio construction


def log_bridge_density_ratio(spec, s, t, x, y):
    _check_times(s, t, spec.horizon_T)
    base, b, T = spec.base, spec.end_b, spec.horizon_T
    den = base.log_density(T - s, x, b)
    if den == -math.inf:
        raise ConstructionInapplicableError(
            "the transition density vanishes at the endpoint; the ratio "
            "construction does not apply -- use the limit construction "
            "(bridge_density_radial_limit) instead"
        )
    return base.log_density(t - s, x, y) + base.log_density(T - t, y, b) - den


def bridge_density_ratio(spec, s, t, x, y):
    """Bridge density p_{t-s}(x,y) p_{T-t}(y,b) / p_{T-s}(x,b), log-assembled.

    Raises ConstructionInapplicableError when the denominator vanishes (the
    pinned-at-zero radial case), directing callers to the limit construction.
    """
    return _finite_exp(log_bridge_density_ratio(spec, s, t, x, y))


# ---------------------------------------------------------------------------
# vanishing-endpoint limit construction for radial bases


def _log_limit_ratio(a, sigma, nu, T, s, t, x, y):
    # lim_{e->0} p_{T-t}(y, e) / p_{T-s}(x, e) for the radial kernels: the
    # e^(2nu+1) factors cancel and the small-argument Bessel limit leaves
    kTs = sigma * sigma * kappa(a, T - s)
    kTt = sigma * sigma * kappa(a, T - t)
    return (
        (nu + 1.0) * (math.log(kTs) - math.log(kTt))
        + math.exp(2.0 * a * (T - s)) * x * x / (2.0 * kTs)
        - math.exp(2.0 * a * (T - t)) * y * y / (2.0 * kTt)
    )


def log_bridge_density_radial_limit(spec, s, t, x, y):
    if not isinstance(spec.base, _RADIAL_BASES):
        raise ConstructionInapplicableError(
            "the limit construction is defined for half-line bases"
        )
    if not spec.pinned_at_zero():
        raise ConstructionInapplicableError(
            "the limit construction requires endpoint b = 0"
        )
    _check_times(s, t, spec.horizon_T)
    x = _as_radial(x)
    y = _as_radial(y)
    a, sigma, d = _scalar_params(spec.base)
    nu = 0.5 * d - 1.0
    return spec.base.log_density(t - s, x, y) + _log_limit_ratio(
        a, sigma, nu, spec.horizon_T, s, t, x, y
    )


def bridge_density_radial_limit(spec, s, t, x, y):
    """Bridge density pinned at zero via the analytic one-sided limit.

    The epsilon limit of the density ratio is evaluated in closed form (the
    kernel prefactors cancel and only kappa ratios plus Gaussian exponent
    corrections survive); valid for any d >= 1.
    """
    return _finite_exp(log_bridge_density_radial_limit(spec, s, t, x, y))


# ---------------------------------------------------------------------------
# closed forms


def wiener_bridge_density(d, T, s, t, x, y):
    """Pinned Brownian motion (endpoints zero): closed-form density.

    ((T-s) / (2 pi (t-s)(T-t)))^(d/2) exp(-|x-y|^2/(2(t-s)) - |y|^2/(2(T-t))
    + |x|^2/(2(T-s))); must agree with the ratio construction.
    """
    _check_times(s, t, T)
    x = _as_vector(x, d)
    y = _as_vector(y, d)
    dxy = x - y
    lg = (
        0.5 * d * math.log((T - s) / (2.0 * math.pi * (t - s) * (T - t)))
        - float(np.dot(dxy, dxy)) / (2.0 * (t - s))
        - float(np.dot(y, y)) / (2.0 * (T - t))
        + float(np.dot(x, x)) / (2.0 * (T - s))
    )
    return _finite_exp(lg)


def ou_scalar_bridge_density(a, sigma, d, T, s, t, x, y):
    """Pinned isotropic linear-drift diffusion (endpoints zero), closed form."""
    _check_times(s, t, T)
    x = _as_vector(x, d)
    y = _as_vector(y, d)
    s2 = sigma * sigma
    kts = s2 * kappa(a, t - s)
    kTt = s2 * kappa(a, T - t)
    kTs = s2 * kappa(a, T - s)
    dxy = y - math.exp(a * (t - s)) * x
    lg = (
        0.5 * d * math.log(kTs / (2.0 * math.pi * kts * kTt))
        - float(np.dot(dxy, dxy)) / (2.0 * kts)
        - math.exp(2.0 * a * (T - t)) * float(np.dot(y, y)) / (2.0 * kTt)
        + math.exp(2.0 * a * (T - s)) * float(np.dot(x, x)) / (2.0 * kTs)
    )
    return _finite_exp(lg)


def ou_bridge_density(A, Sigma, T, s, t, x, y, model=None):
    """Pinned general linear diffusion (endpoints zero), closed form.

    Uses the reversed Gramians Vt_u = int_0^u e^(-vA) S S^T e^(-vA^T) dv:

        sqrt(det Vt_{T-s} / ((2 pi)^d det(Vt_{t-s} Vt_{T-t})))
        * exp(-1/2 (x - e^(-(t-s)A) y)' Vt_{t-s}^-1 (x - e^(-(t-s)A) y)
              - 1/2 y' Vt_{T-t}^-1 y + 1/2 x' Vt_{T-s}^-1 x).

    Pass an existing OuMatrix instance via ``model`` to reuse its Gramian
    cache across a grid of (s, t) pairs.
    """
    _check_times(s, t, T)
    m = model if model is not None else OuMatrix(A, Sigma)
    d = m.d
    x = _as_vector(x, d)
    y = _as_vector(y, d)

    def tilde_logdet_and_quad(u, r):
        _, L, _, _ = m.tilde_transition(u)
        w = np.linalg.solve(L, r)
        ld = 2.0 * float(np.sum(np.log(np.diag(L))))
        return ld, float(np.dot(w, w))

    Minv = m.tilde_transition(t - s)[0]
    ld_ts, q_ts = tilde_logdet_and_quad(t - s, x - Minv @ y)
    ld_Tt, q_Tt = tilde_logdet_and_quad(T - t, y)
    ld_Ts, q_Ts = tilde_logdet_and_quad(T - s, x)
    lg = (
        0.5 * ld_Ts
        - 0.5 * d * _LOG_2PI
        - 0.5 * ld_ts
        - 0.5 * ld_Tt
        - 0.5 * q_ts
        - 0.5 * q_Tt
        + 0.5 * q_Ts
    )
    return _finite_exp(lg)


def radial_bridge_step(a, sigma, d, T, s, t):
    """Radial transition of the pinned process: kernel variance and mean scale.

    Returns the RadialTransition with tau = sigma^2 k(t-s) k(T-t) / k(T-s)
    and mean location m = e^(a(t-s)) k(T-t)/k(T-s) x, the norm distribution
    of the one-step Gaussian bridge law.
    """
    _check_times(s, t, T)
    kts = kappa(a, t - s)
    kTt = kappa(a, T - t)
    kTs = kappa(a, T - s)
    v = sigma * sigma * kts * kTt / kTs
    c = math.exp(a * (t - s)) * kTt / kTs
    return RadialTransition(d, v, c)


def radial_bridge_density(a, sigma, d, T, s, t, x, y):
    """Norm of the pinned isotropic diffusion (endpoints zero), closed form.

    Evaluated as the radial kernel of the one-step Gaussian bridge law; the
    m = 0 branch covers x = 0 and the y = 0 boundary follows the kernel's
    dimension conventions.  Coincides with the limit construction applied to
    the norm process -- that equality is the commutation theorem exercised by
    `verify.commutation_check`.
    """
    x = _as_radial(x)
    y = _as_radial(y)
    step = radial_bridge_step(a, sigma, d, T, s, t)
    return _finite_exp(step.log_density(x, y))


# ---------------------------------------------------------------------------
# two-time kernel objects (evaluation + sampling + integration windows)


class GaussianBridge:
    """Two-time kernel of the pinned Gaussian base (endpoints zero).

    One-step law: Y | X = x ~ N(M x, C) with M, C assembled from the base
    transitions before and after t; supports Wiener, OuScalar and OuMatrix
    bases.  For nonzero endpoints use `bridge_density_ratio`.
    """

    def __init__(self, spec):
        if not isinstance(spec.base, _GAUSSIAN_BASES):
            raise DomainError("GaussianBridge requires a Gaussian base")
        if not spec.pinned_at_zero():
            raise DomainError(
                "closed-form Gaussian bridge steps are implemented for "
                "endpoint zero; use bridge_density_ratio for general b"
            )
        self.spec = spec
        self.d = spec.base.d
        self._steps = {}

    @property
    def space(self):
        return "euclidean"

    def step(self, s, t):
        _check_times(s, t, self.spec.horizon_T)
        key = (s, t)
        cached = self._steps.get(key)
        if cached is not None:
            return cached
        base, T = self.spec.base, self.spec.horizon_T
        if isinstance(base, OuMatrix):
            t1 = base.transition(t - s)
            t2 = base.transition(T - t)
            C1inv = np.linalg.inv(t1.C)
            P = C1inv + t2.M.T @ np.linalg.solve(t2.C, t2.M)
            C = np.linalg.inv(P)
            C = 0.5 * (C + C.T)
            M = C @ (C1inv @ t1.M)
            step = FullTransition(M, C)
        else:
            a = 0.0 if isinstance(base, Wiener) else base.a
            sigma = 1.0 if isinstance(base, Wiener) else base.sigma
            kts = kappa(a, t - s)
            kTt = kappa(a, T - t)
            kTs = kappa(a, T - s)
            v = sigma * sigma * kts * kTt / kTs
            c = math.exp(a * (t - s)) * kTt / kTs
            step = IsotropicTransition(self.d, c, v)
        self._steps[key] = step
        return step

    def log_density(self, s, t, x, y):
        x = _as_vector(x, self.d)
        y = _as_vector(y, self.d)
        return self.step(s, t).log_density(x, y)

    def density(self, s, t, x, y):
        return _finite_exp(self.log_density(s, t, x, y))

    def log_density_many_y(self, s, t, x, Y):
        x = _as_vector(x, self.d)
        return self.step(s, t).log_density_many(x, np.asarray(Y, dtype=float))

    def log_density_many_x(self, s, t, X, y):
        y = _as_vector(y, self.d)
        return self.step(s, t).log_density_many_x(np.asarray(X, dtype=float), y)

    def y_window(self, s, t, x, sigmas=12.0):
        x = _as_vector(x, self.d)
        step = self.step(s, t)
        if isinstance(step, IsotropicTransition):
            return step.c * x, np.full(self.d, sigmas * math.sqrt(step.v))
        return step.M @ x, sigmas * np.sqrt(np.diag(step.C))


class RadialBridge:
    """Two-time kernel of the norm of the pinned isotropic diffusion."""

    def __init__(self, a, sigma, d, T):
        if sigma == 0.0:
            raise DomainError("sigma must be nonzero")
        if T <= 0.0:
            raise DomainError("horizon must be positive")
        self.a = a
        self.sigma = sigma
        self.d = d
        self.T = T

    @property
    def space(self):
        return "halfline"

    def step(self, s, t):
        return radial_bridge_step(self.a, self.sigma, self.d, self.T, s, t)

    def log_density(self, s, t, x, y):
        return self.step(s, t).log_density(_as_radial(x), _as_radial(y))

    def density(self, s, t, x, y):
        return _finite_exp(self.log_density(s, t, x, y))

    def log_density_many_y(self, s, t, x, Y):
        return self.step(s, t).log_density_many(
            _as_radial(x), np.asarray(Y, dtype=float)
        )

    def y_window(self, s, t, x, sigmas=12.0):
        return self.step(s, t).upper(_as_radial(x), sigmas)


class RadialLimitBridge:
    """Two-time kernel built from the analytic vanishing-endpoint limit."""

    def __init__(self, spec):
        if not isinstance(spec.base, _RADIAL_BASES):
            raise DomainError("RadialLimitBridge requires a half-line base")
        if not spec.pinned_at_zero():
            raise DomainError("RadialLimitBridge requires endpoint b = 0")
        self.spec = spec
        self.a, self.sigma, self.d = _scalar_params(spec.base)
        self.nu = 0.5 * self.d - 1.0

    @property
    def space(self):
        return "halfline"

    def log_density(self, s, t, x, y):
        return log_bridge_density_radial_limit(self.spec, s, t, x, y)

    def density(self, s, t, x, y):
        return _finite_exp(self.log_density(s, t, x, y))

    def log_density_many_y(self, s, t, x, Y):
        _check_times(s, t, self.spec.horizon_T)
        x = _as_radial(x)
        Y = np.asarray(Y, dtype=float)
        base_part = self.spec.base.log_density_many_y(t - s, x, Y)
        a, sigma, T = self.a, self.sigma, self.spec.horizon_T
        kTs = sigma * sigma * kappa(a, T - s)
        kTt = sigma * sigma * kappa(a, T - t)
        return (
            base_part
            + (self.nu + 1.0) * (math.log(kTs) - math.log(kTt))
            + math.exp(2.0 * a * (T - s)) * x * x / (2.0 * kTs)
            - math.exp(2.0 * a * (T - t)) * Y * Y / (2.0 * kTt)
        )

    def log_density_many_x(self, s, t, X, y):
        _check_times(s, t, self.spec.horizon_T)
        y = _as_radial(y)
        X = np.asarray(X, dtype=float)
        base_part = self.spec.base.log_density_many_x(t - s, X, y)
        a, sigma, T = self.a, self.sigma, self.spec.horizon_T
        kTs = sigma * sigma * kappa(a, T - s)
        kTt = sigma * sigma * kappa(a, T - t)
        return (
            base_part
            + (self.nu + 1.0) * (math.log(kTs) - math.log(kTt))
            + math.exp(2.0 * a * (T - s)) * X * X / (2.0 * kTs)
            - math.exp(2.0 * a * (T - t)) * y * y / (2.0 * kTt)
        )

    def y_window(self, s, t, x, sigmas=12.0):
        # same mass profile as the closed-form radial bridge step
        return radial_bridge_step(
            self.a, self.sigma, self.d, self.spec.horizon_T, s, t
        ).upper(_as_radial(x), sigmas)

    def x_window(self, s, t, y, sigmas=12.0):
        step = radial_bridge_step(self.a, self.sigma, self.d, self.spec.horizon_T, s, t)
        return (_as_radial(y) + sigmas * math.sqrt(step.tau)) / step.c


class RatioBridge:
    """Two-time kernel from the generic ratio construction (any endpoint b
    where the base density at b stays positive)."""

    def __init__(self, spec):
        self.spec = spec
        self.d = spec.base.d

    @property
    def space(self):
        return self.spec.base.state_space

    def log_density(self, s, t, x, y):
        return log_bridge_density_ratio(self.spec, s, t, x, y)

    def density(self, s, t, x, y):
        return _finite_exp(self.log_density(s, t, x, y))

    def log_density_many_y(self, s, t, x, Y):
        _check_times(s, t, self.spec.horizon_T)
        base, b, T = self.spec.base, self.spec.end_b, self.spec.horizon_T
        den = base.log_density(T - s, x, b)
        if den == -math.inf:
            raise ConstructionInapplicableError(
                "ratio construction inapplicable: endpoint density vanishes"
            )
        Y = np.asarray(Y, dtype=float)
        return (
            base.log_density_many_y(t - s, x, Y)
            + base.log_density_many_x(T - t, Y, b)
            - den
        )

    def log_density_many_x(self, s, t, X, y):
        _check_times(s, t, self.spec.horizon_T)
        base, b, T = self.spec.base, self.spec.end_b, self.spec.horizon_T
        X = np.asarray(X, dtype=float)
        return (
            base.log_density_many_x(t - s, X, y)
            + base.log_density(T - t, y, b)
            - base.log_density_many_x(T - s, X, b)
        )

    def x_window(self, s, t, y, sigmas=12.0):
        return self.spec.base.x_window(t - s, y, sigmas)

    def y_window(self, s, t, x, sigmas=12.0):
        base, b, T = self.spec.base, self.spec.end_b, self.spec.horizon_T
        if self.space == "halfline":
            up_fwd = base.y_window(t - s, x, sigmas)
            up_bwd = base.x_window(T - t, b, sigmas)
            return min(up_fwd, up_bwd)
        c1, r1 = base.y_window(t - s, x, sigmas)
        c2, r2 = base.x_window(T - t, b, sigmas)
        lo = np.maximum(c1 - r1, c2 - r2)
        hi = np.minimum(c1 + r1, c2 + r2)
        center = 0.5 * (lo + hi)
        radii = np.maximum(0.5 * (hi - lo), 1e-6)
        return center, radii

"""Executable verification of the density and bridge identities.

Turns the analytic properties of the kernels into numerical certificates:
Kolmogorov-Chapman consistency, probability normalization, the Bessel
product-integral identity

    int_0^inf y e^(-g y^2) I_nu(a y) I_nu(b y) dy
        = 1/(2g) exp((a^2+b^2)/(4g)) I_nu(a b / (2g)),

the boundedness/integrability hypotheses under which bridges exist, and the
headline commutation statement: the norm of the pinned process and the pinned
norm process share one transition kernel (endpoints zero).

Checks aggregate into `VerificationReport` records carrying the worst grid
points; reports serialize to plain dicts for the CLI's JSON output.  All
evaluation is deterministic: a fixed configuration reproduces residuals bit
for bit.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .bridges import (
    BridgeSpec,
    GaussianBridge,
    RadialBridge,
    RadialLimitBridge,
    RatioBridge,
)
from .exceptions import DomainError
from .models import Bessel, OuMatrix, OuRadial, OuScalar, Wiener, kappa
from .quadrature import (
    QuadratureConfig,
    integrate_box,
    integrate_halfline,
    integrate_interval,
)

__all__ = [
    "QuadratureConfig",
    "VerificationReport",
    "HomogeneousKernel",
    "integrate_halfline",
    "kc_check",
    "normalization_check",
    "bessel_identity_check",
    "commutation_check",
    "epsilon_ratio_limit",
    "lemma_kc_hypotheses_check",
    "lemma_bessel_bridge_hypotheses_check",
    "fit_radial_bound_constants",
    "endpoint_mass",
    "stratified_time_pairs",
    "stratified_time_triples",
    "run_suite",
    "SUITES",
]

_FLOOR = 1e-300
_LOG_FLOOR = math.log(_FLOOR)
_LOG_2PI = 1.8378770664093453


def _jsonable(obj):
    if isinstance(obj, np.ndarray):
        return [float(v) for v in np.atleast_1d(obj)]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    return obj


@dataclass
class VerificationReport:
    """Outcome of one named check over an evaluation grid."""

    check_name: str
    grid_description: str
    max_residual: float
    tolerance: float
    passed: bool
    witnesses: list = field(default_factory=list)
    params: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "check": self.check_name,
            "params": _jsonable(self.params),
            "grid": self.grid_description,
            "max_residual": self.max_residual,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "witnesses": _jsonable(self.witnesses),
        }


def _make_report(name, grid, tolerance, entries, params=None, n_witnesses=5):
    """Assemble a report from (point, lhs, rhs, residual) tuples."""
    entries = sorted(entries, key=lambda e: -e[3])
    finite = all(math.isfinite(e[3]) for e in entries)
    max_residual = entries[0][3] if entries else 0.0
    witnesses = [
        {"point": _jsonable(p), "lhs": lhs, "rhs": rhs, "residual": r}
        for (p, lhs, rhs, r) in entries[:n_witnesses]
    ]
    return VerificationReport(
        check_name=name,
        grid_description=grid,
        max_residual=max_residual,
        tolerance=tolerance,
        passed=bool(finite and max_residual <= tolerance),
        witnesses=witnesses,
        params=params or {},
    )


# ---------------------------------------------------------------------------
# two-time adapter for time-homogeneous models

_MODEL_TYPES = (Wiener, Bessel, OuScalar, OuRadial, OuMatrix)


class HomogeneousKernel:
    """Two-time view p_{s,t} = p_{t-s} of a time-homogeneous model."""

    def __init__(self, model):
        self.model = model

    @property
    def space(self):
        return self.model.state_space

    def log_density(self, s, t, x, y):
        return self.model.log_density(t - s, x, y)

    def log_density_many_y(self, s, t, x, Y):
        return self.model.log_density_many_y(t - s, x, Y)

    def log_density_many_x(self, s, t, X, y):
        return self.model.log_density_many_x(t - s, X, y)

    def y_window(self, s, t, x, sigmas=12.0):
        return self.model.y_window(t - s, x, sigmas)

    def x_window(self, s, t, y, sigmas=12.0):
        return self.model.x_window(t - s, y, sigmas)


def _as_two_time(kernel):
    if isinstance(kernel, _MODEL_TYPES):
        return HomogeneousKernel(kernel)
    return kernel


def _backward_window(kern, t, u, z, sigmas):
    """Region of y where p_{t,u}(y, z) carries mass."""
    if hasattr(kern, "x_window"):
        return kern.x_window(t, u, z, sigmas)
    if hasattr(kern, "step"):  # closed-form bridge kernels
        step = kern.step(t, u)
        if kern.space == "halfline":
            return (z + sigmas * math.sqrt(step.tau)) / step.c
        z = np.atleast_1d(np.asarray(z, dtype=float))
        if hasattr(step, "M"):
            center = np.linalg.solve(step.M, z)
            W = np.linalg.solve(step.M, step.L)
            return center, sigmas * np.sqrt(np.einsum("ij,ij->i", W, W))
        return z / step.c, np.full(z.shape[0], sigmas * math.sqrt(step.v) / step.c)
    raise DomainError("kernel exposes no backward window")


# ---------------------------------------------------------------------------
# Kolmogorov-Chapman and normalization


def kc_check(kernel, s, t, u, x, z, quad_cfg=None):
    """Residual of p_{s,u}(x,z) = int p_{s,t}(x,y) p_{t,u}(y,z) dy.

    `kernel` is either a time-homogeneous model (then s < t < u are absolute
    times of the semigroup identity) or a two-time bridge kernel.  Returns
    |LHS - integral| / max(LHS, 1e-300).
    """
    cfg = quad_cfg or QuadratureConfig()
    kern = _as_two_time(kernel)
    if not (s < t < u):
        raise DomainError("need s < t < u")
    lhs = math.exp(min(kern.log_density(s, u, x, z), 709.0))
    sig = cfg.truncation_sigmas
    if kern.space == "halfline":
        upper = min(kern.y_window(s, t, x, sig), _backward_window(kern, t, u, z, sig))

        def f(y):
            lg = kern.log_density(s, t, x, y) + kern.log_density(t, u, y, z)
            return math.exp(lg) if lg > _LOG_FLOOR else 0.0

        integral = integrate_halfline(f, cfg, upper=upper)
    else:
        c1, r1 = kern.y_window(s, t, x, sig)
        c2, r2 = _backward_window(kern, t, u, z, sig)
        lo = np.maximum(c1 - r1, c2 - r2)
        hi = np.minimum(c1 + r1, c2 + r2)
        if np.any(lo >= hi):
            return abs(lhs) / max(lhs, _FLOOR)  # disjoint mass: integral ~ 0
        center, radii = 0.5 * (lo + hi), 0.5 * (hi - lo)

        def f_many(Y):
            lg = kern.log_density_many_y(s, t, x, Y) + kern.log_density_many_x(
                t, u, Y, z
            )
            return np.exp(np.maximum(lg, _LOG_FLOOR))

        integral = integrate_box(f_many, center, radii, quad_cfg=cfg)
    return abs(lhs - integral) / max(lhs, _FLOOR)


def normalization_check(kernel, s, t, x, quad_cfg=None):
    """Residual of int p_{s,t}(x, y) dy = 1."""
    cfg = quad_cfg or QuadratureConfig()
    kern = _as_two_time(kernel)
    sig = cfg.truncation_sigmas
    if kern.space == "halfline":
        upper = kern.y_window(s, t, x, sig)

        def f(y):
            lg = kern.log_density(s, t, x, y)
            return math.exp(lg) if lg > _LOG_FLOOR else 0.0

        integral = integrate_halfline(f, cfg, upper=upper)
    else:
        center, radii = kern.y_window(s, t, x, sig)

        def f_many(Y):
            lg = kern.log_density_many_y(s, t, x, Y)
            return np.exp(np.maximum(lg, _LOG_FLOOR))

        integral = integrate_box(f_many, center, radii, quad_cfg=cfg)
    return abs(integral - 1.0)


# ---------------------------------------------------------------------------
# Bessel product-integral identity


def bessel_identity_check(alpha, beta, gamma, nu, quad_cfg=None):
    """Relative residual of the I_nu product integral identity.

    Both sides are assembled in log space; the integrand is quadratured after
    subtracting its grid maximum so that arguments up to alpha = beta = 10,
    gamma = 1/2 (integrand peaks near e^200) stay in range.
    """
    if alpha <= 0.0 or beta <= 0.0 or gamma <= 0.0:
        raise DomainError("identity requires alpha, beta, gamma > 0")
    if nu < -0.5:
        raise DomainError("order must be >= -1/2")
    cfg = quad_cfg or QuadratureConfig(abs_tol=1e-13, rel_tol=1e-11)

    def log_integrand(y):
        if y <= 0.0:
            return -math.inf
        return (
            math.log(y)
            - gamma * y * y
            + (alpha + beta) * y
            + _kernels.log_iv_scaled(nu, alpha * y)
            + _kernels.log_iv_scaled(nu, beta * y)
        )

    peak = (alpha + beta) / (2.0 * gamma)
    upper = peak + cfg.truncation_sigmas / math.sqrt(2.0 * gamma)
    grid = np.linspace(0.0, upper, 513)[1:]
    m = max(log_integrand(y) for y in grid)

    def f(y):
        lg = log_integrand(y) - m
        return math.exp(lg) if lg > _LOG_FLOOR else 0.0

    log_lhs = m + math.log(integrate_halfline(f, cfg, upper=upper))
    zc = alpha * beta / (2.0 * gamma)
    log_rhs = (
        -math.log(2.0 * gamma)
        + (alpha * alpha + beta * beta) / (4.0 * gamma)
        + zc
        + _kernels.log_iv_scaled(nu, zc)
    )
    return abs(math.expm1(log_lhs - log_rhs))


# ---------------------------------------------------------------------------
# commutation of "take the norm" and "pin the endpoints"


def stratified_time_pairs(T):
    """(s, t) strata covering interior, near-start and near-horizon regimes."""
    pairs = []
    for s in (0.0, 0.1 * T, 0.5 * T, 0.9 * T):
        for dt in (0.05 * T, 0.2 * T, 0.99 * T - s):
            t = s + dt
            if s < t < T and (s, t) not in pairs:
                pairs.append((s, t))
    return pairs


def stratified_time_triples(T):
    """(s, t, u) strata for two-step consistency checks."""
    triples = []
    for s in (0.0, 0.1 * T, 0.5 * T):
        for dt1 in (0.05 * T, 0.2 * T):
            t = s + dt1
            for dt2 in (0.05 * T, 0.45 * T):
                u = t + dt2
                if s < t < u < T and (s, t, u) not in triples:
                    triples.append((s, t, u))
    return triples


def commutation_check(a, sigma, d, T, quad_cfg=None, xs=None, ys=None):
    """Max relative gap between the two routes to the pinned-norm kernel.

    Route one evaluates the norm-of-pinned-process kernel (RadialBridge);
    route two the pinned-norm-process kernel built from the analytic
    vanishing-endpoint limit (RadialLimitBridge).  Points where both sides
    fall below 1e-300 are skipped (tail underflow carries no information).
    """
    if xs is None:
        xs = np.linspace(0.0, 5.0, 21)
    if ys is None:
        ys = np.linspace(0.0, 5.0, 21)
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    base = Bessel(d) if (a == 0.0 and sigma == 1.0) else OuRadial(a, sigma, d)
    limit_kernel = RadialLimitBridge(BridgeSpec(base, 0.0, 0.0, T))
    closed = RadialBridge(a, sigma, d, T)
    entries = []
    for s, t in stratified_time_pairs(T):
        step = closed.step(s, t)
        for x in xs:
            la = step.log_density_many(x, ys)
            lb = limit_kernel.log_density_many_y(s, t, x, ys)
            for j, y in enumerate(ys):
                if la[j] <= _LOG_FLOOR and lb[j] <= _LOG_FLOOR:
                    continue
                resid = abs(math.expm1(min(la[j], 709.0) - min(lb[j], 709.0)))
                entries.append(
                    ((s, t, float(x), float(y)), float(la[j]), float(lb[j]), resid)
                )
    return _make_report(
        "commutation",
        f"(s,t) strata x {len(xs)}x{len(ys)} state grid on [0,5]^2",
        1e-10,
        entries,
        params={"a": a, "sigma": sigma, "d": d, "T": T},
    )


# ---------------------------------------------------------------------------
# epsilon-limit certification (oracle for the analytic limit)


def epsilon_ratio_limit(model, T, s, t, x, y, k0=6, levels=3):
    """Richardson-extrapolated value of lim p_{T-t}(y, e)/p_{T-s}(x, e).

    Evaluates the ratio at e = 2^-k for k = k0..k0+levels and removes the
    leading even-power corrections (the ratio approaches its limit like
    e^2).  Numerical oracle for the analytic limit used by the bridge
    construction; never called from density code.
    """
    if not isinstance(model, (Bessel, OuRadial)):
        raise DomainError("epsilon limit applies to half-line models")
    vals = []
    for k in range(k0, k0 + levels + 1):
        eps = 2.0 ** (-k)
        lg = model.log_density(T - t, y, eps) - model.log_density(T - s, x, eps)
        vals.append(math.exp(lg))
    table = list(vals)
    for j in range(1, levels + 1):
        fac = 4.0**j
        table = [
            (fac * table[i + 1] - table[i]) / (fac - 1.0)
            for i in range(len(table) - 1)
        ]
    return table[0]


def analytic_ratio_limit(model, T, s, t, x, y):
    """Closed form of the vanishing-endpoint ratio limit for radial models."""
    if isinstance(model, Bessel):
        a, sigma, d = 0.0, 1.0, model.d
    elif isinstance(model, OuRadial):
        a, sigma, d = model.a, model.sigma, model.d
    else:
        raise DomainError("ratio limit applies to half-line models")
    nu = 0.5 * d - 1.0
    kTs = sigma * sigma * kappa(a, T - s)
    kTt = sigma * sigma * kappa(a, T - t)
    lg = (
        (nu + 1.0) * (math.log(kTs) - math.log(kTt))
        + math.exp(2.0 * a * (T - s)) * x * x / (2.0 * kTs)
        - math.exp(2.0 * a * (T - t)) * y * y / (2.0 * kTt)
    )
    return math.exp(lg)


# ---------------------------------------------------------------------------
# existence-hypothesis certificates


def fit_radial_bound_constants(model, t, n=25):
    """Empirical envelope constants for the radial kernel.

    The kernel is squeezed between c1 f and c2 f where f switches between a
    small-argument power profile and a large-argument Gaussian-ridge profile
    at m y = tau.  Returns (c1, c2) as the inf/sup of kernel/f over a
    log-spaced grid; both must be positive and finite.
    """
    if isinstance(model, Bessel):
        d = model.d
    elif isinstance(model, OuRadial):
        d = model.d
    else:
        raise DomainError("bound profile applies to half-line models")
    tr = model.transition(t)
    tau, cscale, nu = tr.tau, tr.c, 0.5 * d - 1.0
    lo, hi = math.inf, 0.0
    grid = np.logspace(-2, 1, n)
    for x in grid:
        m = cscale * x
        for y in grid:
            lp = _kernels.log_radial_kernel(nu, tau, m, y)
            if m * y < tau:
                lf = (
                    -0.5 * d * math.log(tau)
                    + (d - 1.0) * math.log(y)
                    - (m * m + y * y) / (2.0 * tau)
                )
            else:
                lf = (
                    -0.5 * math.log(tau)
                    + 0.5 * (d - 1.0) * (math.log(y) - math.log(m))
                    - (m - y) ** 2 / (2.0 * tau)
                )
            ratio = math.exp(lp - lf)
            lo = min(lo, ratio)
            hi = max(hi, ratio)
    return lo, hi


def lemma_kc_hypotheses_check(model, t, quad_cfg=None):
    """Certificate for the hypotheses behind the semigroup identity.

    Spot-checks continuity through difference quotients, certifies local
    boundedness in each argument on expanding grids, and evaluates
    int p_t(x, y) dx -- against 1 for the Wiener kernel, against
    det(e^(-tA)) for the matrix kernel, and for finiteness (with the
    envelope-bound comparison) for radial kernels.
    """
    cfg = quad_cfg or QuadratureConfig()
    entries = []
    radial = model.state_space == "halfline"

    # (i) continuity spot check: central difference quotients stay finite
    pts = np.linspace(0.4, 2.4, 5)
    h = 1e-5
    max_quot = 0.0
    for p in pts:
        if radial:
            f0 = model.density(t, p, 1.0)
            f1 = model.density(t, p + h, 1.0)
        else:
            x0 = np.full(model.d, p / math.sqrt(model.d))
            y0 = np.zeros(model.d)
            e0 = np.zeros(model.d)
            e0[0] = h
            f0 = model.density(t, x0, y0)
            f1 = model.density(t, x0 + e0, y0)
        max_quot = max(max_quot, abs(f1 - f0) / h)
    entries.append(
        (("continuity-quotient",), max_quot, math.inf, 0.0 if math.isfinite(max_quot) else math.inf)
    )

    # (ii)/(iii) local boundedness in x (and in y) on expanding grids
    sup_p = 0.0
    grid = np.linspace(0.0, 8.0, 33) if radial else np.linspace(-6.0, 6.0, 25)
    for xv in grid:
        if radial:
            vals = model.log_density_many_y(t, xv, np.linspace(0.0, 10.0, 41))
        else:
            x0 = np.full(model.d, xv / math.sqrt(model.d))
            Y = np.zeros((41, model.d))
            Y[:, 0] = np.linspace(-8.0, 8.0, 41)
            vals = model.log_density_many_y(t, x0, Y)
        sup_p = max(sup_p, float(np.exp(np.max(vals))))
    if isinstance(model, Wiener):
        ref = (2.0 * math.pi * t) ** (-0.5 * model.d)
        entries.append((("sup-density",), sup_p, ref, abs(sup_p - ref) / ref))
    else:
        entries.append(
            (("sup-density",), sup_p, math.inf, 0.0 if math.isfinite(sup_p) else math.inf)
        )

    # (iv) integral over the first argument
    if radial:
        y0 = 1.3
        upper = model.x_window(t, y0, cfg.truncation_sigmas)

        def fx(xv):
            lg = model.log_density(t, xv, y0)
            return math.exp(lg) if lg > _LOG_FLOOR else 0.0

        integral = integrate_halfline(fx, cfg, upper=upper)
        _, c2 = fit_radial_bound_constants(model, t)
        tr = model.transition(t)
        tau = tr.tau
        d = model.d
        bound = (
            c2
            * tau ** (-0.5 * d)
            * y0 ** (d - 1.0)
            * (
                integrate_interval(
                    lambda xv: math.exp(-xv * xv / (2.0 * tau)), 0.0, tau / y0, cfg
                )
                + integrate_halfline(
                    lambda xv: math.exp(-((xv - y0) ** 2) / (2.0 * tau)),
                    cfg,
                    upper=y0 + cfg.truncation_sigmas * math.sqrt(tau),
                )
            )
        )
        resid = 0.0 if (math.isfinite(integral) and integral <= bound * (1.0 + 1e-9)) else math.inf
        entries.append((("x-integral", y0), integral, bound, resid))
    else:
        z0 = np.full(model.d, 0.4)
        center, radii = model.x_window(t, z0, cfg.truncation_sigmas)

        def fx_many(X):
            lg = model.log_density_many_x(t, X, z0)
            return np.exp(np.maximum(lg, _LOG_FLOOR))

        integral = integrate_box(fx_many, center, radii, quad_cfg=cfg)
        if isinstance(model, OuMatrix):
            ref = float(np.exp(-t * np.trace(model.A)))
        elif isinstance(model, OuScalar):
            ref = math.exp(-t * model.a * model.d)
        else:
            ref = 1.0
        entries.append((("x-integral",), integral, ref, abs(integral - ref) / ref))

    return _make_report(
        f"kc-hypotheses-{type(model).__name__.lower()}",
        "continuity quotients, boundedness grids, first-argument integral",
        1e-8,
        entries,
        params={"t": t, "model": type(model).__name__},
    )


def lemma_bessel_bridge_hypotheses_check(model, T, quad_cfg=None):
    """Certificate for the vanishing-endpoint limit hypotheses.

    Confirms the epsilon ratio limit exists (Richardson sequence against the
    analytic value, tolerance 1e-6), that the x = 0 branch reduces to the
    kappa-ratio prefactor alone, and that the ratio stays uniformly bounded
    over a (y, epsilon) grid -- for the Brownian norm against the explicit
    envelope bound with fitted constants, for the general drift case by
    finiteness.
    """
    if not isinstance(model, (Bessel, OuRadial)):
        raise DomainError("bridge-limit hypotheses apply to half-line models")
    entries = []
    pts = [
        (0.0, 0.5 * T, 1.0, 0.8),
        (0.1 * T, 0.6 * T, 0.3, 2.0),
        (0.2 * T, 0.9 * T, 2.0, 0.1),
        (0.0, 0.5 * T, 0.0, 1.5),
        (0.0, 0.5 * T, 1.0, 0.0),
    ]
    for s, t, x, y in pts:
        num = epsilon_ratio_limit(model, T, s, t, x, y)
        ana = analytic_ratio_limit(model, T, s, t, x, y)
        entries.append(((s, t, x, y), num, ana, abs(num - ana) / abs(ana)))

    # uniform bound of the ratio over (y, epsilon)
    if isinstance(model, Bessel):
        a, sigma = 0.0, 1.0
    else:
        a, sigma = model.a, model.sigma
    c1, c2 = fit_radial_bound_constants(model, 0.5 * T)
    s, t, x = 0.0, 0.5 * T, 1.2
    sup_ratio = 0.0
    for eps in [2.0 ** (-k) for k in range(3, 12)]:
        if eps >= (T - s) / x:
            continue
        den = model.log_density(T - s, x, eps)
        for y in np.linspace(0.0, 10.0, 51):
            lg = model.log_density(T - t, y, eps) - den
            sup_ratio = max(sup_ratio, math.exp(min(lg, 709.0)))
    if isinstance(model, Bessel):
        bound = (
            (c2 / c1)
            * ((T - s) / (T - t)) ** (0.5 * model.d)
            * math.exp(x * x / (2.0 * (T - s)) + (T - s) / (2.0 * x * x))
        )
        resid = 0.0 if sup_ratio <= bound * (1.0 + 1e-9) else math.inf
        entries.append((("sup-ratio", s, t, x), sup_ratio, bound, resid))
    else:
        entries.append(
            (
                ("sup-ratio", s, t, x),
                sup_ratio,
                math.inf,
                0.0 if math.isfinite(sup_ratio) else math.inf,
            )
        )
    return _make_report(
        f"bridge-limit-hypotheses-{type(model).__name__.lower()}",
        "epsilon-sequence limits vs analytic, uniform ratio bound",
        1e-6,
        entries,
        params={"T": T, "model": type(model).__name__, "a": a, "sigma": sigma},
    )


# ---------------------------------------------------------------------------
# endpoint pinning


def endpoint_mass(bridge, s, x, t, delta, quad_cfg=None):
    """Mass the bridge kernel puts within delta of the zero endpoint at time t."""
    cfg = quad_cfg or QuadratureConfig()
    if bridge.space == "halfline":

        def f(y):
            lg = bridge.log_density(s, t, x, y)
            return math.exp(lg) if lg > _LOG_FLOOR else 0.0

        return integrate_interval(f, 0.0, delta, cfg)
    step = bridge.step(s, t)
    if hasattr(step, "v"):  # isotropic: reduce to the norm kernel
        nu = 0.5 * step.d - 1.0
        m = step.c * float(np.linalg.norm(np.atleast_1d(x)))

        def fr(r):
            lg = _kernels.log_radial_kernel(nu, step.v, m, r)
            return math.exp(lg) if lg > _LOG_FLOOR else 0.0

        return integrate_interval(fr, 0.0, delta, cfg)
    if step.d != 2:
        raise DomainError("ball mass implemented for d = 2 full-covariance steps")
    from scipy.integrate import dblquad

    mean = step.mean(np.atleast_1d(np.asarray(x, dtype=float)))
    log_norm = -_LOG_2PI - 0.5 * step.logdet

    def step_log(p):
        w = np.linalg.solve(step.L, p - mean)
        return log_norm - 0.5 * float(np.dot(w, w))

    value, _ = dblquad(
        lambda theta, r: r
        * math.exp(step_log(np.array([r * math.cos(theta), r * math.sin(theta)]))),
        0.0,
        delta,
        0.0,
        2.0 * math.pi,
        epsabs=cfg.abs_tol,
        epsrel=cfg.rel_tol,
    )
    return value


# ---------------------------------------------------------------------------
# suites


def _stable_2x2(seed=20240501):
    """Deterministic 'random' strictly stable 2x2 drift matrix."""
    rng = np.random.default_rng(seed)
    M = rng.normal(size=(2, 2))
    return M - (np.max(np.linalg.eigvals(M).real) + 1.0) * np.eye(2)


def _standard_models():
    return [
        Wiener(1),
        Wiener(2),
        Wiener(3),
        OuScalar(-0.8, 1.3, 2),
        Bessel(1),
        Bessel(2),
        Bessel(3),
        OuRadial(-0.8, 1.3, 3),
    ]


def _standard_bridges(T=1.0):
    br = [
        GaussianBridge(BridgeSpec(Wiener(1), np.zeros(1), np.zeros(1), T)),
        GaussianBridge(BridgeSpec(Wiener(2), np.zeros(2), np.zeros(2), T)),
        GaussianBridge(BridgeSpec(OuScalar(-0.8, 1.3, 2), np.zeros(2), np.zeros(2), T)),
        GaussianBridge(
            BridgeSpec(OuMatrix(_stable_2x2(), np.eye(2)), np.zeros(2), np.zeros(2), T)
        ),
        RadialBridge(0.0, 1.0, 2, T),
        RadialBridge(-0.8, 1.3, 3, T),
        RadialLimitBridge(BridgeSpec(Bessel(2), 0.0, 0.0, T)),
        RadialLimitBridge(BridgeSpec(OuRadial(0.5, 0.7, 3), 0.0, 0.0, T)),
        RatioBridge(BridgeSpec(Wiener(1), np.zeros(1), np.zeros(1), T)),
        RatioBridge(BridgeSpec(Bessel(1), 0.0, 0.0, T)),
    ]
    return br


def _kernel_name(kern):
    if isinstance(kern, HomogeneousKernel):
        return type(kern.model).__name__.lower()
    name = type(kern).__name__.lower()
    if hasattr(kern, "spec"):
        name += f"[{type(kern.spec.base).__name__.lower()}]"
    elif isinstance(kern, RadialBridge):
        name += f"[d={kern.d}]"
    return name


def _states_for(kern, rng):
    if kern.space == "halfline":
        return [0.0, 0.7, 1.5]
    d = kern.d if hasattr(kern, "d") else kern.model.d
    return [rng.normal(scale=0.7, size=d) for _ in range(2)]


def kc_report_for_model(model, quad_cfg=None, triples=None):
    """KC residual report for one time-homogeneous model."""
    cfg = quad_cfg or QuadratureConfig()
    rng = np.random.default_rng(321)
    kern = HomogeneousKernel(model)
    tol = 1e-6 if isinstance(model, OuMatrix) else 1e-7
    entries = []
    for s, t, u in triples or [(0.0, 0.5, 1.0), (0.0, 0.3, 1.0), (0.2, 0.5, 1.3)]:
        for x in _states_for(kern, rng):
            for z in _states_for(kern, rng):
                r = kc_check(model, s, t, u, x, z, cfg)
                entries.append(((s, t, u, x, z), 0.0, 0.0, r))
    return _make_report(
        f"kc-{_kernel_name(kern)}",
        "time triples x state pairs",
        tol,
        entries,
        params={"model": type(model).__name__},
    )


def kc_report_for_bridge(bridge, T, quad_cfg=None):
    """KC residual report for one two-time bridge kernel."""
    cfg = quad_cfg or QuadratureConfig()
    rng = np.random.default_rng(321)
    base = bridge.spec.base if hasattr(bridge, "spec") else None
    tol = 1e-6 if isinstance(base, OuMatrix) else 1e-7
    entries = []
    for s, t, u in stratified_time_triples(T):
        for x in _states_for(bridge, rng):
            for z in _states_for(bridge, rng):
                r = kc_check(bridge, s, t, u, x, z, cfg)
                entries.append(((s, t, u, x, z), 0.0, 0.0, r))
    return _make_report(
        f"kc-bridge-{_kernel_name(bridge)}",
        "stratified time triples x state pairs",
        tol,
        entries,
        params={"T": T},
    )


def suite_kc(quad_cfg=None, T=1.0, models=None):
    """Semigroup / two-time consistency over the standard model zoo."""
    if models is not None:
        return [kc_report_for_model(m, quad_cfg) for m in models]
    om = OuMatrix(_stable_2x2(), np.eye(2))
    reports = [kc_report_for_model(m, quad_cfg) for m in _standard_models() + [om]]
    reports += [kc_report_for_bridge(b, T, quad_cfg) for b in _standard_bridges(T)]
    return reports


def suite_normalization(quad_cfg=None, T=1.0):
    """Probability-density certification of every bridge kernel."""
    cfg = quad_cfg or QuadratureConfig()
    rng = np.random.default_rng(99)
    reports = []
    for bridge in _standard_bridges(T):
        entries = []
        for s, t in stratified_time_pairs(T):
            for x in _states_for(bridge, rng):
                r = normalization_check(bridge, s, t, x, cfg)
                entries.append(((s, t, x), 0.0, 1.0, r))
        reports.append(
            _make_report(
                f"normalization-{_kernel_name(bridge)}",
                "stratified (s,t) x states",
                1e-8,
                entries,
                params={"T": T},
            )
        )
    return reports


def suite_commute(configs=None, quad_cfg=None):
    """Commutation reports over the standard parameter grid."""
    if configs is None:
        configs = [
            (0.0, 1.0, 1),
            (0.0, 1.0, 2),
            (0.0, 1.0, 3),
            (-0.8, 1.3, 2),
            (0.5, 0.7, 3),
        ]
    reports = []
    for a, sigma, d in configs:
        for T in (1.0, 2.0):
            reports.append(commutation_check(a, sigma, d, T, quad_cfg))
    return reports


def suite_bessel_identity(quad_cfg=None):
    """Product-integral identity over the full parameter grid."""
    entries = []
    for nu in (0.0, 0.5, 1.0, 1.5, 2.0, 3.0):
        for alpha in (0.1, 1.0, 10.0):
            for beta in (0.1, 1.0, 10.0):
                for gamma in (0.5, 1.0, 5.0):
                    r = bessel_identity_check(alpha, beta, gamma, nu, quad_cfg)
                    entries.append(((nu, alpha, beta, gamma), 0.0, 0.0, r))
    return [
        _make_report(
            "bessel-identity",
            "nu in {0,1/2,1,3/2,2,3} x alpha,beta in {0.1,1,10} x gamma in {0.5,1,5}",
            1e-8,
            entries,
        )
    ]


def suite_lemma_hypotheses(quad_cfg=None):
    """Existence-hypothesis certificates for models and radial bridges."""
    reports = []
    for model in [Wiener(2), OuScalar(-0.8, 1.3, 2), Bessel(2), Bessel(3), OuRadial(-0.8, 1.3, 2), OuMatrix(_stable_2x2(), np.eye(2))]:
        reports.append(lemma_kc_hypotheses_check(model, 0.7, quad_cfg))
    for model in [Bessel(2), Bessel(3), OuRadial(-0.8, 1.3, 2)]:
        reports.append(lemma_bessel_bridge_hypotheses_check(model, 1.0, quad_cfg))
    return reports


SUITES = {
    "kc": suite_kc,
    "normalization": suite_normalization,
    "commute": suite_commute,
    "bessel-identity": suite_bessel_identity,
    "lemma-hypotheses": suite_lemma_hypotheses,
}


def run_suite(name, quad_cfg=None, **kwargs):
    """Run a named verification suite; 'all' concatenates every suite."""
    if name == "all":
        reports = []
        for fn in SUITES.values():
            reports.extend(fn(quad_cfg=quad_cfg))
        return reports
    if name not in SUITES:
        raise DomainError(f"unknown suite '{name}' (have {sorted(SUITES)} and 'all')")
    return SUITES[name](quad_cfg=quad_cfg, **kwargs)

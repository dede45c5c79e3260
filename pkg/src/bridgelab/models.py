"""Transition-density kernels for the five process families.

Processes on R^d: the standard Wiener process, the isotropic linear-drift
diffusion dZ = a Z dt + sigma dW (scalar coefficients acting on every
coordinate) and its general matrix form dZ = A Z dt + Sigma dW.  Processes on
[0, inf): the norms (radial parts) of the first two.  Every kernel is a
density with respect to Lebesgue measure on its state space and is evaluated
through log-space assembly with the scaled Bessel function, so values stay
finite for any argument.

The radial kernels share a single code path: the norm of an isotropic
Gaussian N(mu, tau I_d) has density

    p(y) = y^(nu+1) / (tau m^nu) exp(-(m^2+y^2)/(2 tau)) I_nu(m y / tau)

with m = ||mu||, nu = d/2 - 1, with dedicated branches at m = 0 and at the
y = 0 boundary (zero for d >= 2, the folded-Gaussian limit for d = 1).  The
norm of the linear-drift diffusion at time t is exactly this kernel at
tau = sigma^2 kappa(a, t), m = e^(at) x.

`radial_oracle` re-derives the radial laws from first principles: it reduces
the d-dimensional Gaussian ball probability to a 2-d (radius, angle) integral
with the remaining angular factors supplied by sine-power integrals, and is
the independent check on the closed forms above.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import dblquad

from . import _kernels, linalg
from .exceptions import DomainError
from .quadrature import QuadratureConfig
from .specfun import sine_power_integral

__all__ = [
    "Wiener",
    "Bessel",
    "OuScalar",
    "OuRadial",
    "OuMatrix",
    "kappa",
    "density",
    "density_tilde",
    "radial_oracle",
    "IsotropicTransition",
    "FullTransition",
    "RadialTransition",
]

_LOG_2PI = 1.8378770664093453


def _finite_exp(lv):
    """exp clamped to double range: densities never return inf (or raise)."""
    if lv >= 709.0:
        return math.exp(709.0)
    return math.exp(lv)


def kappa(a, t):
    """Variance factor kappa(a, t) = (e^(2at) - 1) / (2a), = t at a = 0.

    Below |a t| = 1e-6 a four-term Taylor expansion avoids the cancellation
    in the direct quotient; the function is continuous across a = 0.
    """
    if t <= 0.0:
        raise DomainError("kappa requires t > 0")
    u = a * t
    if abs(u) < 1e-6:
        return t * (1.0 + u + (2.0 / 3.0) * u * u + (1.0 / 3.0) * u * u * u)
    return math.expm1(2.0 * u) / (2.0 * a)


def _as_vector(x, d, name="state"):
    v = np.atleast_1d(np.asarray(x, dtype=float))
    if v.shape != (d,):
        raise DomainError(f"{name} must have dimension {d}, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise DomainError(f"{name} must be finite")
    return v


def _as_radial(x, name="state"):
    v = float(x)
    if not math.isfinite(v):
        raise DomainError(f"{name} must be finite")
    if v < 0.0:
        raise DomainError(f"{name} must be nonnegative on the half-line")
    return v


class IsotropicTransition:
    """One Gaussian step Y | X = x ~ N(c x, v I_d)."""

    __slots__ = ("d", "c", "v")

    def __init__(self, d, c, v):
        self.d = d
        self.c = c
        self.v = v

    def log_density(self, x, y):
        dx = y - self.c * x
        return -0.5 * self.d * math.log(2.0 * math.pi * self.v) - float(
            np.dot(dx, dx)
        ) / (2.0 * self.v)

    def log_density_many(self, x, Y):
        dx = Y - self.c * x
        q = np.einsum("ij,ij->i", dx, dx)
        return -0.5 * self.d * math.log(2.0 * math.pi * self.v) - q / (2.0 * self.v)

    def log_density_many_x(self, X, y):
        dx = y - self.c * X
        q = np.einsum("ij,ij->i", dx, dx)
        return -0.5 * self.d * math.log(2.0 * math.pi * self.v) - q / (2.0 * self.v)

    def mean(self, x):
        return self.c * np.asarray(x, dtype=float)

    def sample(self, gen, x):
        return self.c * x + math.sqrt(self.v) * gen.standard_normal(self.d)


class FullTransition:
    """One Gaussian step Y | X = x ~ N(M x, C) with full covariance."""

    __slots__ = ("d", "M", "C", "L", "logdet")

    def __init__(self, M, C):
        self.d = M.shape[0]
        self.M = M
        self.C = C
        self.L, self.logdet = linalg.spd_factor(C)

    def _quad(self, r):
        w = np.linalg.solve(self.L, r)
        return float(np.dot(w, w))

    def log_density(self, x, y):
        r = y - self.M @ x
        return -0.5 * (self.d * _LOG_2PI + self.logdet) - 0.5 * self._quad(r)

    def log_density_many(self, x, Y):
        R = Y - self.M @ x
        W = np.linalg.solve(self.L, R.T)
        q = np.einsum("ij,ij->j", W, W)
        return -0.5 * (self.d * _LOG_2PI + self.logdet) - 0.5 * q

    def log_density_many_x(self, X, y):
        R = y - X @ self.M.T
        W = np.linalg.solve(self.L, R.T)
        q = np.einsum("ij,ij->j", W, W)
        return -0.5 * (self.d * _LOG_2PI + self.logdet) - 0.5 * q

    def mean(self, x):
        return self.M @ x

    def sample(self, gen, x):
        return self.M @ x + self.L @ gen.standard_normal(self.d)


class RadialTransition:
    """One radial step: Y | X = x has the norm kernel at (tau, m = c x)."""

    __slots__ = ("d", "nu", "tau", "c")

    def __init__(self, d, tau, c):
        self.d = d
        self.nu = 0.5 * d - 1.0
        self.tau = tau
        self.c = c

    def log_density(self, x, y):
        return _kernels.log_radial_kernel(self.nu, self.tau, self.c * x, y)

    def log_density_many(self, x, Y):
        return _kernels.log_radial_kernel_array(self.nu, self.tau, self.c * x, Y)

    def log_density_many_x(self, X, y):
        X = np.asarray(X, dtype=float)
        out = np.empty(X.shape[0])
        for i in range(X.shape[0]):
            out[i] = _kernels.log_radial_kernel(self.nu, self.tau, self.c * X[i], y)
        return out

    def density_many(self, x, Y):
        return _kernels.radial_kernel_array(self.nu, self.tau, self.c * x, Y)

    def mean_location(self, x):
        return self.c * x

    def upper(self, x, sigmas=12.0):
        return self.c * x + sigmas * math.sqrt(self.tau)


@dataclass(frozen=True)
class Wiener:
    """Standard d-dimensional Wiener process."""

    d: int = 1

    def __post_init__(self):
        if self.d < 1:
            raise DomainError("dimension must be >= 1")

    @property
    def state_space(self):
        return "euclidean"

    def contains(self, x):
        return np.shape(np.atleast_1d(x)) == (self.d,)

    def transition(self, t):
        if t <= 0.0:
            raise DomainError("transition time must be positive")
        return IsotropicTransition(self.d, 1.0, t)

    def log_density(self, t, x, y):
        x = _as_vector(x, self.d)
        y = _as_vector(y, self.d)
        return self.transition(t).log_density(x, y)

    def density(self, t, x, y):
        return _finite_exp(self.log_density(t, x, y))

    def log_density_many_y(self, t, x, Y):
        x = _as_vector(x, self.d)
        return self.transition(t).log_density_many(x, np.asarray(Y, dtype=float))

    def log_density_many_x(self, t, X, y):
        y = _as_vector(y, self.d)
        return self.transition(t).log_density_many_x(np.asarray(X, dtype=float), y)

    def y_window(self, t, x, sigmas=12.0):
        x = _as_vector(x, self.d)
        return x, np.full(self.d, sigmas * math.sqrt(t))

    def x_window(self, t, y, sigmas=12.0):
        y = _as_vector(y, self.d)
        return y, np.full(self.d, sigmas * math.sqrt(t))


@dataclass(frozen=True)
class OuScalar:
    """Isotropic linear-drift diffusion dZ = a Z dt + sigma dW on R^d."""

    a: float
    sigma: float
    d: int = 1

    def __post_init__(self):
        if self.d < 1:
            raise DomainError("dimension must be >= 1")
        if self.sigma == 0.0:
            raise DomainError("sigma must be nonzero")

    @property
    def state_space(self):
        return "euclidean"

    def contains(self, x):
        return np.shape(np.atleast_1d(x)) == (self.d,)

    def transition(self, t):
        if t <= 0.0:
            raise DomainError("transition time must be positive")
        v = self.sigma * self.sigma * kappa(self.a, t)
        return IsotropicTransition(self.d, math.exp(self.a * t), v)

    def log_density(self, t, x, y):
        x = _as_vector(x, self.d)
        y = _as_vector(y, self.d)
        return self.transition(t).log_density(x, y)

    def density(self, t, x, y):
        return _finite_exp(self.log_density(t, x, y))

    def log_density_many_y(self, t, x, Y):
        x = _as_vector(x, self.d)
        return self.transition(t).log_density_many(x, np.asarray(Y, dtype=float))

    def log_density_many_x(self, t, X, y):
        y = _as_vector(y, self.d)
        return self.transition(t).log_density_many_x(np.asarray(X, dtype=float), y)

    def y_window(self, t, x, sigmas=12.0):
        x = _as_vector(x, self.d)
        tr = self.transition(t)
        return tr.c * x, np.full(self.d, sigmas * math.sqrt(tr.v))

    def x_window(self, t, y, sigmas=12.0):
        y = _as_vector(y, self.d)
        tr = self.transition(t)
        return y / tr.c, np.full(self.d, sigmas * math.sqrt(tr.v) / tr.c)


@dataclass(frozen=True)
class Bessel:
    """Norm of d-dimensional Brownian motion, state space [0, inf)."""

    d: int = 1

    def __post_init__(self):
        if self.d < 1:
            raise DomainError("dimension must be >= 1")

    @property
    def state_space(self):
        return "halfline"

    @property
    def nu(self):
        return 0.5 * self.d - 1.0

    def contains(self, x):
        return float(x) >= 0.0

    def transition(self, t):
        if t <= 0.0:
            raise DomainError("transition time must be positive")
        return RadialTransition(self.d, t, 1.0)

    def log_density(self, t, x, y):
        x = _as_radial(x)
        y = _as_radial(y)
        return self.transition(t).log_density(x, y)

    def density(self, t, x, y):
        return _finite_exp(self.log_density(t, x, y))

    def log_density_many_y(self, t, x, Y):
        x = _as_radial(x)
        return self.transition(t).log_density_many(x, np.asarray(Y, dtype=float))

    def log_density_many_x(self, t, X, y):
        y = _as_radial(y)
        return self.transition(t).log_density_many_x(np.asarray(X, dtype=float), y)

    def y_window(self, t, x, sigmas=12.0):
        return self.transition(t).upper(_as_radial(x), sigmas)

    def x_window(self, t, y, sigmas=12.0):
        y = _as_radial(y)
        return y + sigmas * math.sqrt(t)


@dataclass(frozen=True)
class OuRadial:
    """Norm of the isotropic linear-drift diffusion, state space [0, inf)."""

    a: float
    sigma: float
    d: int = 1

    def __post_init__(self):
        if self.d < 1:
            raise DomainError("dimension must be >= 1")
        if self.sigma == 0.0:
            raise DomainError("sigma must be nonzero")

    @property
    def state_space(self):
        return "halfline"

    @property
    def nu(self):
        return 0.5 * self.d - 1.0

    def contains(self, x):
        return float(x) >= 0.0

    def transition(self, t):
        if t <= 0.0:
            raise DomainError("transition time must be positive")
        tau = self.sigma * self.sigma * kappa(self.a, t)
        return RadialTransition(self.d, tau, math.exp(self.a * t))

    def log_density(self, t, x, y):
        x = _as_radial(x)
        y = _as_radial(y)
        return self.transition(t).log_density(x, y)

    def density(self, t, x, y):
        return _finite_exp(self.log_density(t, x, y))

    def log_density_many_y(self, t, x, Y):
        x = _as_radial(x)
        return self.transition(t).log_density_many(x, np.asarray(Y, dtype=float))

    def log_density_many_x(self, t, X, y):
        y = _as_radial(y)
        return self.transition(t).log_density_many_x(np.asarray(X, dtype=float), y)

    def y_window(self, t, x, sigmas=12.0):
        return self.transition(t).upper(_as_radial(x), sigmas)

    def x_window(self, t, y, sigmas=12.0):
        y = _as_radial(y)
        tr = self.transition(t)
        return (y + sigmas * math.sqrt(tr.tau)) / tr.c


class OuMatrix:
    """General linear diffusion dZ = A Z dt + Sigma dW on R^d.

    Requires Sigma Sigma^T positive definite so the transition law has a
    density.  Transition covariances are Gramians from `linalg`, validated
    against quadrature on first use and cached per time.
    """

    def __init__(self, A, Sigma):
        A = np.array(A, dtype=float)
        Sigma = np.array(Sigma, dtype=float)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise DomainError("drift matrix must be square")
        if Sigma.ndim != 2 or Sigma.shape[0] != A.shape[0]:
            raise DomainError("diffusion matrix must be d x r")
        if not (np.all(np.isfinite(A)) and np.all(np.isfinite(Sigma))):
            raise DomainError("matrix entries must be finite")
        try:
            linalg.spd_factor(Sigma @ Sigma.T)  # positive definiteness gate
        except Exception as exc:
            raise DomainError(
                "diffusion product Sigma Sigma^T must be positive definite"
            ) from exc
        A.flags.writeable = False
        Sigma.flags.writeable = False
        self.A = A
        self.Sigma = Sigma
        self.d = A.shape[0]
        self._forward = {}
        self._tilde = {}

    @property
    def state_space(self):
        return "euclidean"

    def contains(self, x):
        return np.shape(np.atleast_1d(x)) == (self.d,)

    def transition(self, t):
        if t <= 0.0:
            raise DomainError("transition time must be positive")
        tr = self._forward.get(t)
        if tr is None:
            M = linalg.matrix_exp(self.A, t)
            V = linalg.gramian_vt(self.A, self.Sigma, t)
            tr = FullTransition(M, V)
            self._forward[t] = tr
        return tr

    def tilde_transition(self, t):
        """Backward-form pieces: (e^(-tA), cholesky of Vt_t, logdet V_t)."""
        if t <= 0.0:
            raise DomainError("transition time must be positive")
        cached = self._tilde.get(t)
        if cached is None:
            Minv = linalg.matrix_exp(self.A, -t)
            Vt = linalg.gramian_vt_tilde(self.A, self.Sigma, t)
            L, _ = linalg.spd_factor(Vt)
            logdet_v = self.transition(t).logdet
            cached = (Minv, L, logdet_v, Vt)
            self._tilde[t] = cached
        return cached

    def log_density(self, t, x, y):
        x = _as_vector(x, self.d)
        y = _as_vector(y, self.d)
        return self.transition(t).log_density(x, y)

    def density(self, t, x, y):
        return _finite_exp(self.log_density(t, x, y))

    def log_density_tilde(self, t, x, y):
        x = _as_vector(x, self.d)
        y = _as_vector(y, self.d)
        Minv, L, logdet_v, _ = self.tilde_transition(t)
        r = x - Minv @ y
        w = np.linalg.solve(L, r)
        return -0.5 * (self.d * _LOG_2PI + logdet_v) - 0.5 * float(np.dot(w, w))

    def log_density_many_y(self, t, x, Y):
        x = _as_vector(x, self.d)
        return self.transition(t).log_density_many(x, np.asarray(Y, dtype=float))

    def log_density_many_x(self, t, X, y):
        y = _as_vector(y, self.d)
        return self.transition(t).log_density_many_x(np.asarray(X, dtype=float), y)

    def y_window(self, t, x, sigmas=12.0):
        x = _as_vector(x, self.d)
        tr = self.transition(t)
        return tr.M @ x, sigmas * np.sqrt(np.diag(tr.C))

    def x_window(self, t, y, sigmas=12.0):
        y = _as_vector(y, self.d)
        Minv, _, _, Vt = self.tilde_transition(t)
        return Minv @ y, sigmas * np.sqrt(np.diag(Vt))


def density(model, t, x, y):
    """Transition density p_t(x, y) of `model` at duration t > 0."""
    return model.density(t, x, y)


def density_tilde(model, t, x, y):
    """Backward-form density of the matrix diffusion (same kernel).

    Uses e^(-tA) and the reversed Gramian Vt_t instead of e^(tA) and V_t;
    both displays describe one kernel, so this must agree with `density`.
    """
    if not isinstance(model, OuMatrix):
        raise DomainError("the backward form exists for matrix diffusions only")
    return _finite_exp(model.log_density_tilde(t, x, y))


def radial_oracle(d, a, sigma, t, x, b, quad_cfg=None):
    """P(||Z_t|| < b | Z_0 = x e_d) by 2-d polar quadrature, no Bessel calls.

    Reduces the d-dimensional Gaussian ball probability to an adaptive
    integral over radius and polar angle,

        C_d int_0^b int_0^pi r^(d-1) sin^(d-2)(theta) (2 pi tau)^(-d/2)
            exp(-(||y||^2 - 2 r m cos(theta) + m^2)/(2 tau)) dtheta dr,

    with m = e^(at) x, tau = sigma^2 kappa(a, t) and the remaining angular
    factors C_d supplied by sine-power integrals.  Independent oracle for the
    closed-form radial kernels.
    """
    if d < 2:
        raise DomainError("polar reduction requires d >= 2")
    if t <= 0.0:
        raise DomainError("time must be positive")
    if b <= 0.0:
        raise DomainError("ball radius must be positive")
    x = _as_radial(x, "initial state")
    cfg = quad_cfg or QuadratureConfig()

    tau = sigma * sigma * kappa(a, t)
    m = math.exp(a * t) * x
    if d == 2:
        angular = 2.0
    else:
        angular = 2.0 * math.pi
        for k in range(2, d - 1):
            angular *= sine_power_integral(d - k - 1)
    log_norm = -0.5 * d * math.log(2.0 * math.pi * tau)
    p = d - 2

    def integrand(theta, r):
        s = math.sin(theta)
        if p > 0 and s <= 0.0:
            return 0.0
        lg = (
            log_norm
            + (d - 1.0) * math.log(r)
            - ((r - m) ** 2 + 2.0 * r * m * (1.0 - math.cos(theta))) / (2.0 * tau)
        )
        if p > 0:
            lg += p * math.log(s)
        return math.exp(lg)

    value, err = dblquad(
        integrand,
        0.0,
        b,
        0.0,
        math.pi,
        epsabs=cfg.abs_tol,
        epsrel=cfg.rel_tol,
    )
    if not math.isfinite(value):
        raise DomainError("polar quadrature produced a non-finite value")
    return angular * value

"""Special functions underlying every transition-density formula.

Gamma, the modified Bessel function of the first kind I_nu (power series
below a crossover, scaled large-argument expansion above it), double
factorials and the sine-power integrals

    int_0^pi sin^k(t) dt = c_k (k-1)!!/k!!,   c_k = pi (k even), 2 (k odd),

plus a numerical certificate for the classical closed form (Gradshteyn &
Ryzhik 8.431)

    int_0^pi sin^(2 nu)(t) e^(c cos t) dt
        = Gamma(nu + 1/2) Gamma(1/2) (c/2)^(-nu) I_nu(c).

Orders below -1/2 and Bessel functions of the second kind are out of scope.
"""

import math

from . import _kernels
from .exceptions import DomainError
from .quadrature import QuadratureConfig, integrate_interval

__all__ = [
    "gamma",
    "log_gamma",
    "double_factorial",
    "bessel_i",
    "bessel_i_scaled",
    "log_bessel_i_scaled",
    "bessel_series_asymptotic_crossover",
    "sine_power_integral",
    "gr8431_check",
]

_LNPI = 1.1447298858494002


def gamma(x):
    """Gamma function for x > 0 (C library implementation, ~1 ulp)."""
    if not x > 0.0:
        raise DomainError("gamma requires a positive argument")
    return math.gamma(x)


def log_gamma(x):
    """log Gamma(x) for x > 0."""
    if not x > 0.0:
        raise DomainError("log_gamma requires a positive argument")
    return math.lgamma(x)


def double_factorial(n):
    """n!! for integer n >= -1, with (-1)!! = 0!! = 1."""
    if n < -1:
        raise DomainError("double factorial needs n >= -1")
    out = 1.0
    k = n
    while k > 1:
        out *= k
        k -= 2
    return out


def _check_order(nu):
    if nu < -0.5:
        raise DomainError("bessel order must be >= -1/2")


def bessel_i(nu, z):
    """Modified Bessel function I_nu(z) for nu >= -1/2, z >= 0.

    Power series below the crossover max(20, 2 nu^2), scaled large-argument
    expansion above it.  Half-integer orders go through the same generic
    path; their elementary closed forms are only used to test this routine.
    """
    _check_order(nu)
    if z < 0.0:
        raise DomainError("bessel argument must be nonnegative")
    return _kernels.iv(nu, z)


def bessel_i_scaled(nu, z):
    """Exponentially scaled modified Bessel function e^-z I_nu(z)."""
    _check_order(nu)
    if z < 0.0:
        raise DomainError("bessel argument must be nonnegative")
    return _kernels.iv_scaled(nu, z)


def log_bessel_i_scaled(nu, z):
    """log(e^-z I_nu(z)); the building block for all log-space densities."""
    _check_order(nu)
    if z < 0.0:
        raise DomainError("bessel argument must be nonnegative")
    return _kernels.log_iv_scaled(nu, z)


def bessel_series_asymptotic_crossover(nu):
    """The argument at which bessel_i switches from series to expansion."""
    _check_order(nu)
    return _kernels.iv_crossover(nu)


def sine_power_integral(k):
    """int_0^pi sin^k(theta) dtheta for integer k >= 0.

    Equals c_k (k-1)!!/k!! with c_k = pi for even k and 2 for odd k.  k = 0
    returns pi (empty product convention), which is the correct value of the
    integral, not an error.
    """
    if k < 0:
        raise DomainError("sine power must be nonnegative")
    ratio = 1.0
    if k % 2 == 0:
        c = math.pi
        for i in range(1, k // 2 + 1):
            ratio *= (2.0 * i - 1.0) / (2.0 * i)
    else:
        c = 2.0
        for i in range(1, (k - 1) // 2 + 1):
            ratio *= (2.0 * i) / (2.0 * i + 1.0)
    return c * ratio


def gr8431_check(nu, c, quad_cfg=None):
    """Relative residual of the G&R 8.431 identity at order nu, argument c.

    The left side int_0^pi sin^(2 nu)(t) e^(c cos t) dt is evaluated by
    adaptive quadrature, the right side from lgamma and the scaled Bessel
    function; the result is |LHS - RHS| / RHS.
    """
    _check_order(nu)
    if nu < 0.0:
        raise DomainError("identity requires nu >= 0 (dimension >= 2)")
    if c <= 0.0:
        raise DomainError("identity requires c > 0")
    cfg = quad_cfg or QuadratureConfig(abs_tol=1e-13, rel_tol=1e-12)
    p = 2.0 * nu

    def integrand(theta):
        s = math.sin(theta)
        if s <= 0.0:
            return 0.0 if p > 0.0 else math.exp(c * math.cos(theta))
        return math.exp(p * math.log(s) + c * math.cos(theta))

    lhs = integrate_interval(integrand, 0.0, math.pi, cfg)
    log_rhs = (
        math.lgamma(nu + 0.5)
        + 0.5 * _LNPI
        - nu * math.log(0.5 * c)
        + c
        + _kernels.log_iv_scaled(nu, c)
    )
    rhs = math.exp(log_rhs)
    return abs(lhs - rhs) / rhs

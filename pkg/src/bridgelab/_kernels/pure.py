"""Pure-Python scalar kernels: scaled modified Bessel I and the radial kernel.

These are the hot inner functions of the library: every radial transition
density, bridge density, quadrature check and inverse-CDF tabulation bottoms
out here.  ``bridgelab._kernels`` selects either this module or its compiled
twin ``_native`` at import time; both implement the same arithmetic, operation
for operation, so the backends agree to rounding error.

The modified Bessel function of the first kind is evaluated from its power
series

    I_nu(z) = sum_m (z/2)^(2m+nu) / (m! Gamma(nu+m+1))

below a crossover point and from the large-argument expansion

    I_nu(z) = e^z / sqrt(2 pi z) * [1 + O(1/z)]

above it (DLMF 10.40.1 correction terms, adaptively truncated).  Everything is
exposed in exponentially scaled / logarithmic form so that density code can
assemble exponents without overflow.
"""

import math

import numpy as np

_LN2 = 0.6931471805599453
_LNPI = 1.1447298858494002
_LOG_2PI = 1.8378770664093453
_EXP_MAX = 709.782712893384
# log(1e280), used when the series accumulator is rescaled.
_LOG_RESCALE = 644.6752766962181
_INF = float("inf")


def _exp(v):
    # math.exp raises OverflowError instead of returning inf; C exp does not.
    if v >= _EXP_MAX:
        return _INF
    return math.exp(v)


def iv_crossover(nu):
    """Switch point between the power series and the large-z expansion."""
    return max(20.0, 2.0 * nu * nu)


def log_iv_scaled_series(nu, z):
    """log(e^-z I_nu(z)) from the power series, z > 0.

    Terms are accumulated relative to the leading one and the sum is cut when
    a term drops below 1e-17 of the partial sum.  The accumulator is rescaled
    before it can overflow (large nu together with z near the crossover).
    """
    q = 0.25 * z * z
    c = 1.0
    s = 1.0
    shift = 0.0
    m = 0
    while m < 20000:
        c = c * q / ((m + 1.0) * (nu + m + 1.0))
        s = s + c
        m += 1
        if c < 1e-17 * s:
            break
        if s > 1e280:
            c = c * 1e-280
            s = s * 1e-280
            shift = shift + _LOG_RESCALE
    return nu * math.log(0.5 * z) - math.lgamma(nu + 1.0) + math.log(s) + shift - z


def log_iv_scaled_asymptotic(nu, z):
    """log(e^-z I_nu(z)) from the large-z expansion, adaptively truncated.

    The correction series is summed until the terms either start growing
    (past the optimal truncation point) or fall below 1e-17 of the running
    sum, with a hard cap of 40 terms.
    """
    mu = 4.0 * nu * nu
    c = 1.0
    a = 1.0
    prev = _INF
    k = 0
    while k < 40:
        f = 2.0 * k + 1.0
        c = -c * (mu - f * f) / (8.0 * z * (k + 1.0))
        ac = abs(c)
        if ac >= prev:
            break
        a = a + c
        prev = ac
        k += 1
        if ac < 1e-17 * a:
            break
    return -0.5 * (_LOG_2PI + math.log(z)) + math.log(a)


def log_iv_scaled(nu, z):
    """log(e^-z I_nu(z)) for nu >= -1/2, z >= 0."""
    if z < 0.0:
        raise ValueError("bessel argument must be nonnegative")
    if z == 0.0:
        if nu == 0.0:
            return 0.0
        return -_INF if nu > 0.0 else _INF
    if z <= iv_crossover(nu):
        return log_iv_scaled_series(nu, z)
    return log_iv_scaled_asymptotic(nu, z)


def iv_scaled(nu, z):
    """e^-z I_nu(z)."""
    return _exp(log_iv_scaled(nu, z))


def iv(nu, z):
    """I_nu(z); returns inf when the unscaled value exceeds double range."""
    lv = log_iv_scaled(nu, z)
    if lv == -_INF:
        return 0.0
    return _exp(lv + z)


def log_radial_kernel(nu, tau, m, y):
    """Log density at y >= 0 of the norm of N(mu, tau*I_d) with ||mu|| = m.

    Here nu = d/2 - 1.  Boundary conventions: the density vanishes at y = 0
    for d >= 2; for d = 1 (nu = -1/2) the y -> 0 limit sqrt(2/(pi tau)) *
    exp(-m^2/(2 tau)) is returned.  The m = 0 branch uses the dedicated
    closed form.  Exponents are assembled in log space throughout, with the
    scaled Bessel function absorbing the e^{m y / tau} growth.
    """
    if tau <= 0.0:
        raise ValueError("tau must be positive")
    if m < 0.0 or y < 0.0:
        raise ValueError("radial states must be nonnegative")
    if y == 0.0:
        if nu == -0.5:
            return 0.5 * (_LN2 - _LNPI - math.log(tau)) - m * m / (2.0 * tau)
        return -_INF
    if m == 0.0:
        return (
            (2.0 * nu + 1.0) * math.log(y)
            - nu * _LN2
            - (nu + 1.0) * math.log(tau)
            - math.lgamma(nu + 1.0)
            - y * y / (2.0 * tau)
        )
    d = m - y
    return (
        (nu + 1.0) * math.log(y)
        - math.log(tau)
        - nu * math.log(m)
        - d * d / (2.0 * tau)
        + log_iv_scaled(nu, m * y / tau)
    )


def radial_kernel(nu, tau, m, y):
    """Density at y of the norm of N(mu, tau*I_d), ||mu|| = m, nu = d/2 - 1."""
    return _exp(log_radial_kernel(nu, tau, m, y))


def log_radial_kernel_array(nu, tau, m, ys):
    """Vectorized log_radial_kernel over a 1-d array of y values."""
    ys = np.ascontiguousarray(ys, dtype=np.float64)
    out = np.empty(ys.shape[0])
    for i in range(ys.shape[0]):
        out[i] = log_radial_kernel(nu, tau, m, ys[i])
    return out


def radial_kernel_array(nu, tau, m, ys):
    """Vectorized radial_kernel over a 1-d array of y values."""
    ys = np.ascontiguousarray(ys, dtype=np.float64)
    out = np.empty(ys.shape[0])
    for i in range(ys.shape[0]):
        out[i] = _exp(log_radial_kernel(nu, tau, m, ys[i]))
    return out

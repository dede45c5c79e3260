# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of ``bridgelab._kernels.pure``.

Same functions, same arithmetic, C speed.  Keep the operation order in sync
with the pure module so both backends agree to rounding error.
"""

from libc.math cimport exp, fabs, lgamma, log

import numpy as np

cdef double _LN2 = 0.6931471805599453
cdef double _LNPI = 1.1447298858494002
cdef double _LOG_2PI = 1.8378770664093453
cdef double _EXP_MAX = 709.782712893384
cdef double _LOG_RESCALE = 644.6752766962181
cdef double _INF = float("inf")


cdef inline double _exp(double v) nogil:
    if v >= _EXP_MAX:
        return _INF
    return exp(v)


cdef inline double _crossover(double nu) nogil:
    cdef double c = 2.0 * nu * nu
    return c if c > 20.0 else 20.0


cdef double _log_iv_scaled_series(double nu, double z) nogil:
    cdef double q = 0.25 * z * z
    cdef double c = 1.0
    cdef double s = 1.0
    cdef double shift = 0.0
    cdef int m = 0
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
    return nu * log(0.5 * z) - lgamma(nu + 1.0) + log(s) + shift - z


cdef double _log_iv_scaled_asymptotic(double nu, double z) nogil:
    cdef double mu = 4.0 * nu * nu
    cdef double c = 1.0
    cdef double a = 1.0
    cdef double prev = _INF
    cdef double f, ac
    cdef int k = 0
    while k < 40:
        f = 2.0 * k + 1.0
        c = -c * (mu - f * f) / (8.0 * z * (k + 1.0))
        ac = fabs(c)
        if ac >= prev:
            break
        a = a + c
        prev = ac
        k += 1
        if ac < 1e-17 * a:
            break
    return -0.5 * (_LOG_2PI + log(z)) + log(a)


cdef double _log_iv_scaled(double nu, double z) nogil:
    if z == 0.0:
        if nu == 0.0:
            return 0.0
        return -_INF if nu > 0.0 else _INF
    if z <= _crossover(nu):
        return _log_iv_scaled_series(nu, z)
    return _log_iv_scaled_asymptotic(nu, z)


cdef double _log_radial_kernel(double nu, double tau, double m, double y) nogil:
    cdef double d
    if y == 0.0:
        if nu == -0.5:
            return 0.5 * (_LN2 - _LNPI - log(tau)) - m * m / (2.0 * tau)
        return -_INF
    if m == 0.0:
        return (
            (2.0 * nu + 1.0) * log(y)
            - nu * _LN2
            - (nu + 1.0) * log(tau)
            - lgamma(nu + 1.0)
            - y * y / (2.0 * tau)
        )
    d = m - y
    return (
        (nu + 1.0) * log(y)
        - log(tau)
        - nu * log(m)
        - d * d / (2.0 * tau)
        + _log_iv_scaled(nu, m * y / tau)
    )


def iv_crossover(double nu):
    """Switch point between the power series and the large-z expansion."""
    return _crossover(nu)


def log_iv_scaled_series(double nu, double z):
    """log(e^-z I_nu(z)) from the power series, z > 0."""
    return _log_iv_scaled_series(nu, z)


def log_iv_scaled_asymptotic(double nu, double z):
    """log(e^-z I_nu(z)) from the large-z expansion, adaptively truncated."""
    return _log_iv_scaled_asymptotic(nu, z)


def log_iv_scaled(double nu, double z):
    """log(e^-z I_nu(z)) for nu >= -1/2, z >= 0."""
    if z < 0.0:
        raise ValueError("bessel argument must be nonnegative")
    return _log_iv_scaled(nu, z)


def iv_scaled(double nu, double z):
    """e^-z I_nu(z)."""
    if z < 0.0:
        raise ValueError("bessel argument must be nonnegative")
    return _exp(_log_iv_scaled(nu, z))


def iv(double nu, double z):
    """I_nu(z); returns inf when the unscaled value exceeds double range."""
    if z < 0.0:
        raise ValueError("bessel argument must be nonnegative")
    cdef double lv = _log_iv_scaled(nu, z)
    if lv == -_INF:
        return 0.0
    return _exp(lv + z)


def log_radial_kernel(double nu, double tau, double m, double y):
    """Log density at y of the norm of N(mu, tau*I_d) with ||mu|| = m."""
    if tau <= 0.0:
        raise ValueError("tau must be positive")
    if m < 0.0 or y < 0.0:
        raise ValueError("radial states must be nonnegative")
    return _log_radial_kernel(nu, tau, m, y)


def radial_kernel(double nu, double tau, double m, double y):
    """Density at y of the norm of N(mu, tau*I_d), ||mu|| = m, nu = d/2 - 1."""
    if tau <= 0.0:
        raise ValueError("tau must be positive")
    if m < 0.0 or y < 0.0:
        raise ValueError("radial states must be nonnegative")
    return _exp(_log_radial_kernel(nu, tau, m, y))


def log_radial_kernel_array(double nu, double tau, double m, ys):
    """Vectorized log_radial_kernel over a 1-d array of y values."""
    if tau <= 0.0:
        raise ValueError("tau must be positive")
    if m < 0.0:
        raise ValueError("radial states must be nonnegative")
    arr = np.ascontiguousarray(ys, dtype=np.float64)
    if arr.size and arr.min() < 0.0:
        raise ValueError("radial states must be nonnegative")
    out = np.empty(arr.shape[0])
    cdef double[::1] y = arr
    cdef double[::1] o = out
    cdef Py_ssize_t i
    with nogil:
        for i in range(y.shape[0]):
            o[i] = _log_radial_kernel(nu, tau, m, y[i])
    return out


def radial_kernel_array(double nu, double tau, double m, ys):
    """Vectorized radial_kernel over a 1-d array of y values."""
    if tau <= 0.0:
        raise ValueError("tau must be positive")
    if m < 0.0:
        raise ValueError("radial states must be nonnegative")
    arr = np.ascontiguousarray(ys, dtype=np.float64)
    if arr.size and arr.min() < 0.0:
        raise ValueError("radial states must be nonnegative")
    out = np.empty(arr.shape[0])
    cdef double[::1] y = arr
    cdef double[::1] o = out
    cdef Py_ssize_t i
    with nogil:
        for i in range(y.shape[0]):
            o[i] = _exp(_log_radial_kernel(nu, tau, m, y[i]))
    return out

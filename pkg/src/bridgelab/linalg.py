"""Dense matrix kernel: matrix exponential, covariance Gramians, Lyapunov.

The Gramians

    V_t  = int_0^t e^((t-v)A) S S^T e^((t-v)A^T) dv
    Vt_t = int_0^t e^(-vA)    S S^T e^(-vA^T)    dv

are computed by the Van Loan block-exponential method and cross-validated
against composite-Simpson quadrature of the integrand.  The algebraic
Lyapunov equation A V + V A^T = -S S^T is solved through the vectorized
Kronecker-sum system, which is ample for the small dense matrices this
library targets (d <= 10 for Lyapunov/Gramians, d <= 50 for the
exponential).
"""

import numpy as np
import scipy.linalg

from .exceptions import ComputationError, DomainError

__all__ = [
    "matrix_exp",
    "gramian_vt",
    "gramian_vt_tilde",
    "simpson_gramian",
    "lyapunov_solve",
    "spd_factor",
]

_MAX_EXP_DIM = 50
_MAX_GRAMIAN_DIM = 10


def _as_square(A):
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DomainError("expected a square matrix")
    if not np.all(np.isfinite(A)):
        raise DomainError("matrix entries must be finite")
    return A


def _diffusion_product(A, S):
    S = np.asarray(S, dtype=float)
    if S.ndim != 2 or S.shape[0] != A.shape[0]:
        raise DomainError("diffusion matrix must be d x r")
    if not np.all(np.isfinite(S)):
        raise DomainError("diffusion entries must be finite")
    return S @ S.T


def matrix_exp(A, t=1.0):
    """e^(tA) by scaling-and-squaring with a Pade approximant."""
    A = _as_square(A)
    if A.shape[0] > _MAX_EXP_DIM:
        raise DomainError(f"matrix exponential limited to d <= {_MAX_EXP_DIM}")
    if not np.isfinite(t):
        raise DomainError("time must be finite")
    return scipy.linalg.expm(t * A)


def simpson_gramian(A, Q, t, panels=4096):
    """Composite-Simpson quadrature of int_0^t e^(uA) Q e^(uA^T) du.

    Independent validator for the block-exponential Gramian; the exponentials
    at the nodes are built by repeated multiplication with e^(hA).
    """
    if panels % 2:
        panels += 1
    h = t / panels
    Eh = scipy.linalg.expm(h * A)
    M = np.eye(A.shape[0])
    acc = np.array(Q, dtype=float)  # u = 0 term, weight 1
    for k in range(1, panels + 1):
        M = M @ Eh
        w = 1.0 if k == panels else (4.0 if k % 2 else 2.0)
        acc = acc + w * (M @ Q @ M.T)
    return acc * (h / 3.0)


def _van_loan(A, Q, t):
    d = A.shape[0]
    block = np.zeros((2 * d, 2 * d))
    block[:d, :d] = A
    block[:d, d:] = Q
    block[d:, d:] = -A.T
    E = scipy.linalg.expm(t * block)
    # top-left block is e^(tA); V_t = E12 @ (e^(tA))^T
    return E[:d, d:] @ E[:d, :d].T


def _validated_gramian(A, Q, t, validate, validate_panels):
    V = _van_loan(A, Q, t)
    asym = np.max(np.abs(V - V.T)) / max(np.max(np.abs(V)), 1e-300)
    V = 0.5 * (V + V.T)
    if asym > 1e-10:
        raise ComputationError(f"Gramian asymmetry residual {asym:g}")
    if validate:
        ref = simpson_gramian(A, Q, t, panels=validate_panels)
        scale = max(np.max(np.abs(ref)), 1e-300)
        diff = np.max(np.abs(V - ref)) / scale
        if diff > 1e-8:
            raise ComputationError(
                f"Gramian disagrees with Simpson quadrature by {diff:g} "
                f"(block={V.tolist()}, quadrature={ref.tolist()})"
            )
    return V


def gramian_vt(A, S, t, validate=True, validate_panels=4096):
    """Covariance V_t = int_0^t e^((t-v)A) S S^T e^((t-v)A^T) dv.

    Computed by the Van Loan block exponential, symmetrized, and (by default)
    cross-checked against composite-Simpson quadrature of the integrand.
    """
    A = _as_square(A)
    if A.shape[0] > _MAX_GRAMIAN_DIM:
        raise DomainError(f"Gramians limited to d <= {_MAX_GRAMIAN_DIM}")
    if t <= 0.0:
        raise DomainError("Gramian time must be positive")
    Q = _diffusion_product(A, S)
    return _validated_gramian(A, Q, t, validate, validate_panels)


def gramian_vt_tilde(A, S, t, validate=True, validate_panels=4096):
    """Covariance Vt_t = int_0^t e^(-vA) S S^T e^(-vA^T) dv.

    Substituting u = t - v turns this into the V_t integral for -A, so the
    same block method applies.  Satisfies V_t = e^(tA) Vt_t e^(tA^T).
    """
    A = _as_square(A)
    if A.shape[0] > _MAX_GRAMIAN_DIM:
        raise DomainError(f"Gramians limited to d <= {_MAX_GRAMIAN_DIM}")
    if t <= 0.0:
        raise DomainError("Gramian time must be positive")
    Q = _diffusion_product(A, S)
    return _validated_gramian(-A, Q, t, validate, validate_panels)


def lyapunov_solve(A, S):
    """Solve A V + V A^T = -S S^T for the stationary covariance V.

    Requires every eigenvalue of A to have real part < -1e-10 (borderline
    spectra are rejected).  Solves the vectorized Kronecker-sum system and
    verifies the residual to 1e-10.
    """
    A = _as_square(A)
    d = A.shape[0]
    if d > _MAX_GRAMIAN_DIM:
        raise DomainError(f"Lyapunov solver limited to d <= {_MAX_GRAMIAN_DIM}")
    eigs = np.linalg.eigvals(A)
    if np.max(eigs.real) >= -1e-10:
        raise DomainError(
            f"Lyapunov equation needs a strictly stable matrix; "
            f"max Re(lambda) = {np.max(eigs.real):g}"
        )
    Q = _diffusion_product(A, S)
    # row-major vec: vec(AV) = kron(A, I) v, vec(V A^T) = kron(I, A) v
    eye = np.eye(d)
    K = np.kron(A, eye) + np.kron(eye, A)
    V = np.linalg.solve(K, -Q.reshape(-1)).reshape(d, d)
    V = 0.5 * (V + V.T)
    resid = np.max(np.abs(A @ V + V @ A.T + Q)) / max(np.max(np.abs(Q)), 1e-300)
    if resid > 1e-10:
        raise ComputationError(f"Lyapunov residual {resid:g} exceeds 1e-10")
    return V


def spd_factor(V):
    """Cholesky factor and log-determinant of a symmetric positive definite V.

    Cholesky failure *is* the positive-definiteness test; density code needs
    both the factor (for quadratic forms) and the log-determinant.
    """
    V = _as_square(V)
    try:
        L = np.linalg.cholesky(V)
    except np.linalg.LinAlgError as exc:
        raise ComputationError("covariance is not positive definite") from exc
    logdet = 2.0 * float(np.sum(np.log(np.diag(L))))
    return L, logdet

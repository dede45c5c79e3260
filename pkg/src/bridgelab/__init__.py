"""bridgelab: transition densities, Markov bridges and their certification.

The library evaluates closed-form transition kernels for Wiener, Bessel and
linear-drift (Ornstein-Uhlenbeck type) diffusions and their radial parts,
builds pinned (bridge) kernels from them by the ratio and vanishing-endpoint
limit constructions, verifies the analytic identities numerically
(Kolmogorov-Chapman, normalization, the Bessel product integral, the
commutation of "pin the endpoints" with "take the norm"), and samples exact
bridge paths.

Hot scalar kernels live in a compiled extension with a pure-Python fallback;
see ``bridgelab._kernels.BACKEND`` for the active one.
"""

from ._kernels import BACKEND as kernel_backend
from .bridges import (
    BridgeSpec,
    GaussianBridge,
    RadialBridge,
    RadialLimitBridge,
    RatioBridge,
    bridge_density_radial_limit,
    bridge_density_ratio,
    ou_bridge_density,
    ou_scalar_bridge_density,
    radial_bridge_density,
    wiener_bridge_density,
)
from .exceptions import (
    BridgelabError,
    ComputationError,
    ConstructionInapplicableError,
    DomainError,
    QuadratureError,
)
from .linalg import gramian_vt, gramian_vt_tilde, lyapunov_solve, matrix_exp
from .models import (
    Bessel,
    OuMatrix,
    OuRadial,
    OuScalar,
    Wiener,
    density,
    density_tilde,
    kappa,
    radial_oracle,
)
from .quadrature import QuadratureConfig
from .sample import (
    KsResult,
    PathSample,
    gaussian_bridge_norm_sample,
    ks_two_sample,
    radial_bridge_marginal_sample,
    sample_bridge_paths,
    sample_gaussian_bridge_path,
    sample_radial_bridge_path,
)
from .specfun import (
    bessel_i,
    bessel_i_scaled,
    gamma,
    gr8431_check,
    sine_power_integral,
)
from .verify import (
    VerificationReport,
    bessel_identity_check,
    commutation_check,
    kc_check,
    normalization_check,
    run_suite,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "kernel_backend",
    "BridgeSpec",
    "GaussianBridge",
    "RadialBridge",
    "RadialLimitBridge",
    "RatioBridge",
    "bridge_density_ratio",
    "bridge_density_radial_limit",
    "wiener_bridge_density",
    "ou_bridge_density",
    "ou_scalar_bridge_density",
    "radial_bridge_density",
    "BridgelabError",
    "ComputationError",
    "ConstructionInapplicableError",
    "DomainError",
    "QuadratureError",
    "matrix_exp",
    "gramian_vt",
    "gramian_vt_tilde",
    "lyapunov_solve",
    "Wiener",
    "Bessel",
    "OuScalar",
    "OuRadial",
    "OuMatrix",
    "kappa",
    "density",
    "density_tilde",
    "radial_oracle",
    "QuadratureConfig",
    "PathSample",
    "KsResult",
    "sample_gaussian_bridge_path",
    "sample_radial_bridge_path",
    "sample_bridge_paths",
    "radial_bridge_marginal_sample",
    "gaussian_bridge_norm_sample",
    "ks_two_sample",
    "gamma",
    "bessel_i",
    "bessel_i_scaled",
    "sine_power_integral",
    "gr8431_check",
    "VerificationReport",
    "kc_check",
    "normalization_check",
    "bessel_identity_check",
    "commutation_check",
    "run_suite",
]

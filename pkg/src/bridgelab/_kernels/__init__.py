"""Kernel backend selection.

The compiled extension ``_native`` is preferred when it has been built; the
pure-Python twin ``pure`` is the fallback.  Set ``BRIDGELAB_PURE_KERNELS=1``
to force the pure backend (useful for benchmarking and debugging).
"""

import os

if os.environ.get("BRIDGELAB_PURE_KERNELS") == "1":
    from . import pure as _impl
else:
    try:
        from . import _native as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import pure as _impl

#: Name of the active backend: "native" (compiled) or "pure".
BACKEND = "native" if _impl.__name__.endswith("_native") else "pure"

iv = _impl.iv
iv_scaled = _impl.iv_scaled
log_iv_scaled = _impl.log_iv_scaled
log_iv_scaled_series = _impl.log_iv_scaled_series
log_iv_scaled_asymptotic = _impl.log_iv_scaled_asymptotic
iv_crossover = _impl.iv_crossover
log_radial_kernel = _impl.log_radial_kernel
radial_kernel = _impl.radial_kernel
log_radial_kernel_array = _impl.log_radial_kernel_array
radial_kernel_array = _impl.radial_kernel_array

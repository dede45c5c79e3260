"""Benchmark the compiled kernel extension against the pure-Python twin.

Run:  python benchmarks/bench_kernels.py

Times the scalar scaled-Bessel evaluation, the vectorized radial kernel, and
an end-to-end adaptive normalization integral (the shape of every
verification inner loop).  Falls back gracefully when the extension was not
built.
"""

import time

import numpy as np
from scipy.integrate import quad

from bridgelab._kernels import pure

try:
    from bridgelab._kernels import _native as native
except ImportError:
    native = None


def bench(label, fn, repeats=3):
    best = min(_timed(fn) for _ in range(repeats))
    print(f"  {label:<38} {best * 1e3:9.2f} ms")
    return best


def _timed(fn):
    t0 = time.perf_counter()
    fn()
    return time.perf_counter() - t0


def scalar_loop(mod, zs):
    def run():
        total = 0.0
        for z in zs:
            total += mod.log_iv_scaled(0.5, z)
        return total

    return run


def array_kernel(mod, ys):
    def run():
        return mod.log_radial_kernel_array(0.5, 0.37, 1.3, ys)

    return run


def normalization_integral(mod):
    def run():
        val, _ = quad(
            lambda y: mod.radial_kernel(0.5, 0.37, 1.3, y),
            0.0,
            12.0,
            epsabs=1e-12,
            epsrel=1e-12,
            limit=200,
        )
        return val

    return run


def main():
    rng = np.random.default_rng(0)
    zs = rng.uniform(0.0, 60.0, 200_000)
    ys = rng.uniform(0.0, 10.0, 2_000_000)

    backends = [("pure", pure)]
    if native is not None:
        backends.append(("native", native))
    else:
        print("compiled extension not built; benchmarking pure backend only")

    results = {}
    for name, mod in backends:
        print(f"{name} backend:")
        results[name, "scalar"] = bench(
            "log_iv_scaled scalar x 200k", scalar_loop(mod, zs)
        )
        results[name, "array"] = bench(
            "log_radial_kernel_array 2M", array_kernel(mod, ys)
        )
        results[name, "quad"] = bench(
            "adaptive normalization integral", normalization_integral(mod)
        )

    if native is not None:
        for key, label in [
            ("scalar", "scalar Bessel"),
            ("array", "vectorized radial kernel"),
            ("quad", "adaptive integral"),
        ]:
            speedup = results["pure", key] / results["native", key]
            print(f"native speedup, {label:<26} {speedup:6.1f}x")

        agree = max(
            abs(pure.log_iv_scaled(1.5, z) - native.log_iv_scaled(1.5, z))
            for z in zs[:2000]
        )
        print(f"max |pure - native| over 2k points: {agree:.3e}")


if __name__ == "__main__":
    main()

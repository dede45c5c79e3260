import os

from setuptools import Extension, setup

# The compiled kernel extension is optional: bridgelab._kernels falls back to
# the pure-Python twin when the module is absent.  Set BRIDGELAB_NO_EXTENSION=1
# to skip compilation entirely.
ext_modules = []
if os.environ.get("BRIDGELAB_NO_EXTENSION") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "bridgelab._kernels._native",
                    ["src/bridgelab/_kernels/_native.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)

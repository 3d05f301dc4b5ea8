"""Build shim: compiles the optional native kernel extension.

The package works without the extension (a numpy fallback is selected at
import time), so a failed or skipped Cython build must not fail the install.
Set K3LAB_SKIP_NATIVE=1 to skip the extension build entirely.
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("K3LAB_SKIP_NATIVE") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "k3lab._kernels._native",
                    ["src/k3lab/_kernels/_native.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            language_level=3,
        )
    except Exception:
        ext_modules = []

setup(ext_modules=ext_modules)

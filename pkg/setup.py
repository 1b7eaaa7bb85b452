"""Builds the optional Cython speedup extension.

The package works without the extension (pure-Python fallback is selected
at import time), so a failed compile downgrades to a warning instead of
aborting the install.
"""

import warnings

from setuptools import setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        "src/scenetext/kernels/_speedups.pyx",
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - depends on build env
    warnings.warn(f"Cython extension skipped, using pure-Python kernels: {exc}")
    ext_modules = []

setup(ext_modules=ext_modules)

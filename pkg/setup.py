"""Build script.

The compiled extension is optional: if Cython is unavailable or the build
fails, the package still installs and falls back to the pure-Python kernel
(selection happens in hamflux._backend at import time).
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/hamflux/_core.pyx"],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - build-environment dependent
    print("hamflux: building without compiled core (%s)" % exc)

setup(ext_modules=ext_modules)

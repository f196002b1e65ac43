"""Build script: compiles the optional fast quadrature kernel.

The package is fully functional without the extension; a numpy fallback
is selected at import time (see vortexw._kernels).
"""
from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("vortexw._fastkernels", ["src/vortexw/_fastkernels.pyx"])],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - build-env dependent
    print(f"vortexw: building without the compiled kernel ({exc})")

setup(ext_modules=ext_modules)

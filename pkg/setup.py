"""Build script: compiles the hot-kernel extension when Cython is available.

Without Cython (or if the toolchain is missing) the package installs anyway and
falls back to the pure-Python kernels at import time.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/iwalab/_kernels.pyx"],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)

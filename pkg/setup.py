"""Build hook: compile the ribbon map kernel when a toolchain is available.

The package is fully functional without the extension (nlab.kernels falls
back to the pure-Python twin), so any build failure here is non-fatal.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    ext_modules = cythonize(
        ["src/nlab/_kernels.pyx"],
        language_level=3,
    )
except Exception as exc:  # no cython / no compiler: ship pure python
    print("nlab: skipping compiled kernels (%s)" % exc)

setup(ext_modules=ext_modules)

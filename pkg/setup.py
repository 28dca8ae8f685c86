"""Build hook for the optional compiled kernels.

The package is fully usable without them; a failed compile leaves the
pure-Python kernels in charge.
"""
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # no Cython: ship the fallback only
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("transdyn._ckernels", ["src/transdyn/_ckernels.pyx"], optional=True)],
        compiler_directives={"language_level": "3"},
        quiet=True,
    )

setup(ext_modules=ext_modules)

import numpy
from setuptools import setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        "src/gradlie/_kernels/_core.pyx",
        compiler_directives={"boundscheck": False, "wraparound": False, "language_level": 3},
    )
except Exception:
    # The package falls back to the pure-python kernels at import time.
    ext_modules = []

setup(ext_modules=ext_modules, include_dirs=[numpy.get_include()])

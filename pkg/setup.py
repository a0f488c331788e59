import os

import numpy
from setuptools import Extension, setup

# The compiled core is optional: set IURLAB_SKIP_NATIVE=1 to install the
# pure-Python fallback only (the package selects a backend at import time).
if os.environ.get("IURLAB_SKIP_NATIVE") == "1":
    ext_modules = []
else:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "iurlab._native",
                ["src/iurlab/_native.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)

"""Extension build for the HNSW hot kernels.

The compiled module is optional: if Cython or a C compiler is unavailable
(or MOLEX_NO_EXT=1), the package installs without it and the pure-Python
kernels are selected at import time.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("MOLEX_NO_EXT") != "1":
    try:
        import numpy as np
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "molex._kernels._hnswk",
                    ["src/molex/_kernels/_hnswk.pyx"],
                    include_dirs=[np.get_include()],
                    extra_compile_args=["-O3"],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)

import os

import numpy as np
from setuptools import setup, Extension

# The compiled kernel is optional: a failed build leaves the numpy fallback in place.
ext_modules = []
if not os.environ.get("HBAR_DICKE_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "hbar_dicke._kernels",
                    ["src/hbar_dicke/_kernels.pyx"],
                    include_dirs=[np.get_include()],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": 3},
        )

setup(ext_modules=ext_modules)

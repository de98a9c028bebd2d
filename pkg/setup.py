"""Build script: compiles the optional C kernel extension.

The package is fully functional without the extension (a NumPy fallback is
selected at import time), so the extension is marked optional and any build
failure is non-fatal.  Set CYCLO_NO_EXT=1 to skip the compile step entirely.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("CYCLO_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "cyclo._kernels._ck",
                    ["src/cyclo/_kernels/_ck.pyx"],
                    optional=True,
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)

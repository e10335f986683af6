"""Build the optional Cython kernel; without Cython the package is pure Python."""

import os

from setuptools import setup

ext_modules = []
if not os.environ.get("DOCDRIFT_NO_EXTENSION"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            ["src/docdrift/_ckernel.pyx"],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)

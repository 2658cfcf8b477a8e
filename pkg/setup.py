import os

from setuptools import setup

ext_modules = []
if os.environ.get("CARLITZ_PURE") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "carlitz._censuskernel",
                    ["src/carlitz/_censuskernel.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        # Pure-Python install still works; the census falls back to the
        # interpreted kernel selected at import time.
        ext_modules = []

setup(ext_modules=ext_modules)

"""Builds the optional Cython extension; the package works without it."""
import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("MATCHKERN_NO_EXT", "") in ("", "0"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("matchkern._speedups", ["src/matchkern/_speedups.pyx"], extra_compile_args=["-O3"], optional=True)],
            compiler_directives={"language_level": "3"},
            quiet=True,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)

"""Builds the optional compiled kernel extension.

The package works without it (a NumPy fallback is selected at import time),
so any failure here is downgraded to a plain-Python install.
"""

from setuptools import Extension, setup

extensions = []
try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "qdgas.kernels._cext",
                ["src/qdgas/kernels/_cext.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=extensions)

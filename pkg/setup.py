"""Build script: compiles the optional Cython kernel.

The package works without the extension (a pure-Python backend with the same
interface is selected at import time), so any failure here downgrades the build
to pure Python instead of aborting it.
"""

from setuptools import Extension, setup

extensions = []
try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [Extension("fqprimes._kernels", ["src/fqprimes/_kernels.pyx"])],
        compiler_directives={
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
            "initializedcheck": False,
            "language_level": "3",
        },
    )
except ImportError:
    pass

setup(ext_modules=extensions)

"""Build script: compiles the accelerated kernels when a toolchain is present.

The package works without the extension; ``cogbound.kernels`` falls back to
the numpy implementation at import time.  Set COGBOUND_NO_EXT=1 to skip the
compile step entirely.
"""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """build_ext that degrades to the pure-Python package on compile failure."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # missing compiler, broken toolchain, ...
            self._skip(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._skip(exc)

    @staticmethod
    def _skip(exc):
        print(f"WARNING: skipping compiled kernels ({exc}); "
              "the pure-Python fallback will be used")


def extensions():
    if os.environ.get("COGBOUND_NO_EXT") == "1":
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("WARNING: Cython not available; building without compiled kernels")
        return []
    return cythonize(
        [Extension("cogbound._ckernels", ["src/cogbound/_ckernels.pyx"])],
        compiler_directives={"language_level": "3"},
    )


setup(ext_modules=extensions(), cmdclass={"build_ext": optional_build_ext})

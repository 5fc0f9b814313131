"""Build script for the optional compiled closure kernel.

The package is pure Python except for one hot loop: the join-congruence
closure on the square grid (slimlat._closure).  If Cython or a C compiler
is unavailable the extension is skipped and the package falls back to
slimlat._closure_py at import time.  Set SLIMLAT_NO_EXT=1 to skip the
extension on purpose.
"""
import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Treat any extension build failure as a soft miss, not a fatal error."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, broken toolchain, ...
            self._skip(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._skip(exc)

    @staticmethod
    def _skip(exc):
        print(f"warning: compiled closure kernel skipped ({exc}); "
              "using the pure-Python fallback")


ext_modules = []
cmdclass = {}
if os.environ.get("SLIMLAT_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("slimlat._closure", ["src/slimlat/_closure.pyx"])],
            language_level=3,
        )
        cmdclass = {"build_ext": optional_build_ext}
    except ImportError:
        print("warning: Cython not available; using the pure-Python closure kernel")

setup(ext_modules=ext_modules, cmdclass=cmdclass)

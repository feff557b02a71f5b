"""Build script for the optional compiled kernels.

The package works without the extension (a pure Python twin of every
kernel ships in ``weakcross._kernels_py``), so a failed compile only
costs speed.  Set ``WEAKCROSS_NO_EXT=1`` to skip the extension build
entirely.
"""

import os
import sys

from setuptools import setup
from setuptools.command.build_ext import build_ext


def _extensions():
    if os.environ.get("WEAKCROSS_NO_EXT"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        sys.stderr.write("warning: Cython not available, building without compiled kernels\n")
        return []
    return cythonize(
        ["src/weakcross/_ckernels.pyx"],
        compiler_directives={"language_level": "3"},
    )


class OptionalBuildExt(build_ext):
    """Treat extension build failures as a warning, not an error."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # pragma: no cover - toolchain dependent
            sys.stderr.write(f"warning: skipping compiled kernels ({exc})\n")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # pragma: no cover - toolchain dependent
            sys.stderr.write(f"warning: failed to build {ext.name} ({exc}); "
                             "falling back to pure Python kernels\n")


setup(ext_modules=_extensions(), cmdclass={"build_ext": OptionalBuildExt})

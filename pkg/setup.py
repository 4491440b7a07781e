"""Build the optional compiled quadrature kernel.

If Cython or a C compiler is unavailable the package still installs; the
pure-Python kernel in ``fuzzyladder._quadpy`` is used at import time.
"""
import os
import sys

from setuptools import setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # pragma: no cover - toolchain dependent
            print(f"fuzzyladder: compiled kernel not built ({exc})", file=sys.stderr)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # pragma: no cover - toolchain dependent
            print(f"fuzzyladder: {ext.name} not built ({exc})", file=sys.stderr)


ext_modules = []
if not os.environ.get("FUZZYLADDER_NO_EXT"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "fuzzyladder._quadext",
                    ["src/fuzzyladder/_quadext.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except Exception as exc:  # pragma: no cover - build environment dependent
        print(f"fuzzyladder: skipping compiled kernel ({exc})", file=sys.stderr)
        ext_modules = []

setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})

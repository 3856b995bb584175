"""Build the optional Cython ring kernel; fall back to pure Python when it cannot be compiled."""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001
            print(f"warning: compiled kernel not built ({exc}); using pure Python")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            print(f"warning: failed to build {ext.name} ({exc}); using pure Python")


extensions = []
if not os.environ.get("WITTEN_GCI_PURE_BUILD"):
    try:
        from Cython.Build import cythonize

        extensions = cythonize(
            [Extension("witten_gci._ringcore", ["src/witten_gci/_ringcore.pyx"],
                       extra_compile_args=["-O3"])],
            compiler_directives={"language_level": "3", "boundscheck": False,
                                 "wraparound": False, "embedsignature": True},
        )
    except ImportError:
        extensions = []

setup(ext_modules=extensions, cmdclass={"build_ext": OptionalBuildExt})

"""Build script: compiles the optional enumeration kernel.

The package works without the extension (a pure-Python kernel is selected
at import time), so the build is marked optional and any compiler failure
is non-fatal.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None:
    ext_modules = cythonize(
        [
            Extension(
                "modaltab._kernel",
                ["src/modaltab/_kernel.pyx"],
                extra_compile_args=["-O2"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)

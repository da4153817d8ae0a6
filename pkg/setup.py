"""Build script for the optional compiled counting kernel.

The package works without the extension: bollyrics.counting falls back to
pure Python when bollyrics._native is missing.
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
                "bollyrics._native",
                ["src/bollyrics/_native.pyx"],
                language="c++",
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)

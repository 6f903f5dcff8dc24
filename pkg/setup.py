"""Build script for the optional compiled elimination kernel.

The package is pure Python; `gwa._rankcore` is a Cython twin of
`gwa._rankcore_py` that speeds up the fraction-free elimination hot loop.
If Cython or a C compiler is missing, the build silently skips the
extension and the package falls back to the pure implementation.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("gwa._rankcore", ["src/gwa/_rankcore.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)

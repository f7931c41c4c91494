"""Build script: compiles the permutation kernel when Cython is available.

The package is fully functional without the compiled extension; the
pure-Python kernel in ``reconsys.ipgen._feistel_py`` is selected at import
time as a fallback.  Build in place with::

    python setup.py build_ext --inplace
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "reconsys.ipgen._feistel_cy",
                ["src/reconsys/ipgen/_feistel_cy.pyx"],
            )
        ],
        language_level="3",
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)

import os

from setuptools import setup

ext_modules = []
if os.environ.get("AMPLIKIT_PURE_PYTHON") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension("amplikit._signcore", ["src/amplikit/_signcore.pyx"])],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        # no Cython at build time: the package falls back to the pure-Python
        # kernels in amplikit._signcore_py, selected at import
        ext_modules = []

setup(ext_modules=ext_modules)

import os

from setuptools import setup

ext_modules = []
if os.environ.get("HDTWRC_NO_EXT", "") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension("hdtwrc._simplex", ["src/hdtwrc/_simplex.pyx"], extra_compile_args=["-O2"])],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        # Cython missing: the pure-Python kernel is used instead
        ext_modules = []

setup(ext_modules=ext_modules)

import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("ORIGAMIKZ_NO_EXT"):
    try:
        import numpy
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "origamikz._kernels._speedups",
                    ["src/origamikz/_kernels/_speedups.pyx"],
                    include_dirs=[numpy.get_include()],
                    language="c++",
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        # no Cython/numpy at build time: install pure-Python only,
        # the kernel selector falls back at import
        ext_modules = []

setup(ext_modules=ext_modules)

import os

from setuptools import setup

# The compiled kernels are an optional accelerator: if Cython (or a C
# compiler) is missing, the package installs anyway and falls back to the
# numpy implementation in geophase._kernels._rk4_py.
ext_modules = []
if not os.environ.get("GEOPHASE_NO_EXT"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "geophase._kernels._rk4",
                    ["src/geophase/_kernels/_rk4.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)

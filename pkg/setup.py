import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("G2MODULI_SKIP_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "g2moduli._kernels.fastcore",
                    ["src/g2moduli/_kernels/fastcore.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            language_level=3,
        )
    except ImportError:
        # pure-Python kernels are used when the extension cannot be built
        ext_modules = []

setup(ext_modules=ext_modules)

import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("PCFCOLOR_PURE"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "pcfcolor._kernels.ckernel",
                    ["src/pcfcolor/_kernels/ckernel.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        # no Cython at build time: install pure, the import-time fallback covers it
        ext_modules = []

setup(ext_modules=ext_modules)

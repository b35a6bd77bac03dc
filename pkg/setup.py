import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("SUSYPEP_NO_EXTENSION") != "1":
    try:
        from Cython.Build import cythonize

        ext = Extension(
            "susypep._kernels._numerov_cy",
            ["src/susypep/_kernels/_numerov_cy.pyx"],
            extra_compile_args=["-O3"],
        )
        ext_modules = cythonize(ext, compiler_directives={"language_level": "3"})
    except ImportError:
        # No Cython available: install the pure-Python package only.
        pass

setup(ext_modules=ext_modules)

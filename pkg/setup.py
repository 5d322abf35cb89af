from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

# The package runs fine without the extension (a NumPy fallback is selected
# at import time); skipping the build just costs solver speed.
ext_modules = []
if cythonize is not None:
    ext_modules = cythonize(
        [
            Extension(
                "safe3step._kernels._sweeps_cy",
                ["src/safe3step/_kernels/_sweeps_cy.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
            "initializedcheck": False,
        },
    )

setup(ext_modules=ext_modules)

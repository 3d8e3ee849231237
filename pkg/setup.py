"""Build hook: compile the shooting kernel when a toolchain is available.

The extension is optional; without it the package falls back to the pure
Python integrator at import time (see qes_nbody.kernels).
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "qes_nbody._shoot_cy",
                ["src/qes_nbody/_shoot_cy.pyx"],
                # no fast-math: the compiled kernel must stay IEEE-identical
                # to the pure-Python fallback
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)

from setuptools import Extension, setup

# The compiled eigenvalue kernel is optional: the package falls back to a
# pure-numpy implementation when qclone._kernels is absent.
try:
    import numpy as np
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "qclone._kernels",
                ["src/qclone/_kernels.pyx"],
                include_dirs=[np.get_include()],
            )
        ],
        language_level="3",
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)

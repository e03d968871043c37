import numpy
from Cython.Build import cythonize
from setuptools import Extension, setup

extensions = [
    Extension(
        "swb._kernels",
        sources=["src/swb/_kernels.pyx"],
        include_dirs=[numpy.get_include()],
        extra_compile_args=["-O3"],
        language="c",
    )
]

setup(ext_modules=cythonize(extensions, compiler_directives={"language_level": 3}))

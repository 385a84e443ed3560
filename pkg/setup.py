from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

if cythonize is not None:
    ext_modules = cythonize(
        [
            Extension(
                "tdelpezzo._ckernels",
                ["src/tdelpezzo/_ckernels.pyx"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )
else:
    # pure-Python install; tdelpezzo.kernels falls back automatically
    ext_modules = []

setup(ext_modules=ext_modules)

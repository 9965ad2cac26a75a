from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    # no Cython: install the pure-Python package only
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("chordknots._kernels_c", ["src/chordknots/_kernels_c.pyx"], extra_compile_args=["-O2"])],
        language_level=3,
    )

setup(ext_modules=ext_modules)

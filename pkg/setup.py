from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("bsbimod._enumcore", ["src/bsbimod/_enumcore.pyx"])],
        language_level=3,
    )
except ImportError:
    # no Cython available: the pure-Python kernel is used at import time
    pass

setup(ext_modules=ext_modules)

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [Extension("digitop._core", ["src/digitop/_core.pyx"], optional=True)],
        language_level="3",
    )
except ImportError:
    # No Cython: install the pure-Python package; digitop falls back at import.
    extensions = []

setup(ext_modules=extensions)

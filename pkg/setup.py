# Build the compiled Fock-kernel extension. A pure-Python fallback is
# selected at import time if the extension is unavailable, so installing
# without a working compiler still yields a functional package:
#   pip install -e . --no-build-isolation
import numpy
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "spcsim._kernels",
                ["src/spcsim/_kernels.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)

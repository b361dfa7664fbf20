"""Hot kernels, dispatched to numba or numpy per ``CUBEPAD_BACKEND``.

The selection happens once at import time. Both implementations stay
importable (``kernels._numpy`` / ``kernels._numba``) for cross-checks and
benchmarks.
"""

from .._config import backend_name

BACKEND = backend_name()

if BACKEND == "numba":
    from ._numba import bilinear_sample, full_search, gather4, lanczos_sample
else:
    from ._numpy import bilinear_sample, full_search, gather4, lanczos_sample

__all__ = ["BACKEND", "bilinear_sample", "full_search", "gather4", "lanczos_sample"]

"""Runtime switches read from the environment.

``CUBEPAD_BACKEND`` selects the kernel implementation: ``numba`` (default) or
``numpy``. ``CUBEPAD_THREADS`` caps worker threads when no explicit count is
passed.
"""

import logging
import os

log = logging.getLogger(__name__)


def backend_name() -> str:
    name = os.environ.get("CUBEPAD_BACKEND", "numba").strip().lower()
    if name not in ("numba", "numpy"):
        raise ValueError(f"CUBEPAD_BACKEND must be 'numba' or 'numpy', got {name!r}")
    if name == "numba":
        try:
            import numba  # noqa: F401
        except ImportError:  # pragma: no cover
            log.warning("numba not importable; falling back to numpy kernels")
            return "numpy"
    return name


def default_threads() -> int:
    raw = os.environ.get("CUBEPAD_THREADS")
    if raw:
        try:
            n = int(raw)
        except ValueError:
            raise ValueError(f"CUBEPAD_THREADS must be an integer, got {raw!r}")
        if n < 1:
            raise ValueError("CUBEPAD_THREADS must be >= 1")
        return n
    return 1

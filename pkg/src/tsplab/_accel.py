"""Numba dispatch.

Set ``TSPLAB_NO_NUMBA=1`` to force the pure numpy/python kernels, e.g. when
numba is unavailable or to compare both paths (see benchmarks/).
"""
import os

try:
    import numba

    HAS_NUMBA = True
except ImportError:  # pragma: no cover
    numba = None
    HAS_NUMBA = False

USE_NUMBA = HAS_NUMBA and os.environ.get("TSPLAB_NO_NUMBA", "").strip() in ("", "0")


def jit(func):
    """Compile ``func`` in nopython mode, or return it unchanged without numba."""
    if not HAS_NUMBA:
        return func
    return numba.njit(cache=True, nogil=True)(func)

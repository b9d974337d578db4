"""Kernel backend selection.

Two implementations of the hot bipolar kernels are kept side by side:
numba @njit versions and plain numpy versions. The active backend is
chosen at import time from the CMLHDC_BACKEND environment variable
("numba" by default, "numpy" to force the fallback). Both produce
bit-identical results; benchmarks/bench_kernels.py compares them.
"""

import os

import numpy as np

__all__ = ["backend_name", "sum_clip", "bipolar_matvec"]


def _sum_clip_np(stack):
    """Signed-add the rows of an int8 (b, d) stack and clip to {-1, +1}.

    Row count must be odd so no column sum is zero; callers append the
    tie-break vector beforehand.
    """
    totals = stack.sum(axis=0, dtype=np.int64)
    return np.where(totals > 0, 1, -1).astype(np.int8)


def _bipolar_matvec_np(mat, vec):
    """Integer dot products of each int8 row of `mat` with int8 `vec`."""
    # float64 accumulation is exact for |sum| < 2**53, far above any d here
    return (mat.astype(np.float64) @ vec.astype(np.float64)).astype(np.int64)


try:
    from numba import njit

    _HAVE_NUMBA = True

    @njit(cache=True)
    def _sum_clip_nb(stack):
        b, d = stack.shape
        out = np.empty(d, np.int8)
        for j in range(d):
            total = 0
            for i in range(b):
                total += stack[i, j]
            out[j] = 1 if total > 0 else -1
        return out

    @njit(cache=True)
    def _bipolar_matvec_nb(mat, vec):
        n, d = mat.shape
        out = np.empty(n, np.int64)
        for i in range(n):
            total = 0
            for j in range(d):
                total += mat[i, j] * vec[j]
            out[i] = total
        return out

except ImportError:  # pragma: no cover - numba is a declared dependency
    _HAVE_NUMBA = False
    _sum_clip_nb = None
    _bipolar_matvec_nb = None


_requested = os.environ.get("CMLHDC_BACKEND", "numba").lower()
if _requested not in ("numba", "numpy"):
    raise ValueError(f"CMLHDC_BACKEND must be 'numba' or 'numpy', got {_requested!r}")

if _requested == "numba" and _HAVE_NUMBA:
    _ACTIVE = "numba"
    sum_clip = _sum_clip_nb
    bipolar_matvec = _bipolar_matvec_nb
else:
    _ACTIVE = "numpy"
    sum_clip = _sum_clip_np
    bipolar_matvec = _bipolar_matvec_np


def backend_name():
    """Name of the active kernel backend ("numba" or "numpy")."""
    return _ACTIVE

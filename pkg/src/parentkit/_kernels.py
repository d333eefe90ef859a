"""Longest-common-subsequence kernels over integer-encoded token arrays.

Two interchangeable implementations live here:

* ``numba``: ``@njit`` compiled two-row dynamic program (the default when
  numba is importable).
* ``numpy``: a row-vectorised formulation that needs nothing beyond numpy.

The backend is picked once at import time from the ``PARENTKIT_BACKEND``
environment variable (``numba`` or ``numpy``). Both implementations are
always importable by name so tests and benchmarks can compare them.

The numpy row update relies on the fact that, for the standard recurrence::

    cur[j] = prev[j-1] + 1                 if a[i] == b[j]
    cur[j] = max(prev[j], cur[j-1])        otherwise

a match cell can never be smaller than its left neighbour
(``cur[j-1] <= prev[j-1] + 1``), so the whole row is a running maximum of
``where(match, prev[:-1] + 1, prev[1:])``.
"""
import os
import warnings

import numpy as np

__all__ = [
    "BACKEND",
    "NUMBA_AVAILABLE",
    "lcs_len",
    "lcs_many",
    "lcs_len_numpy",
    "lcs_many_numpy",
    "lcs_len_numba",
    "lcs_many_numba",
]


def lcs_len_numpy(a, b):
    if a.shape[0] == 0 or b.shape[0] == 0:
        return 0
    # iterate over the shorter sequence; the row spans the longer one
    if a.shape[0] > b.shape[0]:
        a, b = b, a
    prev = np.zeros(b.shape[0] + 1, dtype=np.int64)
    for x in a:
        step = np.where(b == x, prev[:-1] + 1, prev[1:])
        prev[1:] = np.maximum.accumulate(step)
    return int(prev[-1])


def lcs_many_numpy(flat, offsets, b):
    out = np.empty(offsets.shape[0] - 1, dtype=np.int64)
    for k in range(out.shape[0]):
        out[k] = lcs_len_numpy(flat[offsets[k]:offsets[k + 1]], b)
    return out


try:
    from numba import njit

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - exercised only without numba
    NUMBA_AVAILABLE = False

if NUMBA_AVAILABLE:

    @njit(cache=True, nogil=True)
    def lcs_len_numba(a, b):
        n = a.shape[0]
        m = b.shape[0]
        if n == 0 or m == 0:
            return 0
        if n > m:
            a, b = b, a
            n, m = m, n
        prev = np.zeros(m + 1, dtype=np.int64)
        cur = np.zeros(m + 1, dtype=np.int64)
        for i in range(n):
            x = a[i]
            for j in range(1, m + 1):
                if b[j - 1] == x:
                    cur[j] = prev[j - 1] + 1
                elif prev[j] >= cur[j - 1]:
                    cur[j] = prev[j]
                else:
                    cur[j] = cur[j - 1]
            prev, cur = cur, prev
        return prev[m]

    @njit(cache=True, nogil=True)
    def lcs_many_numba(flat, offsets, b):
        k = offsets.shape[0] - 1
        out = np.empty(k, dtype=np.int64)
        for r in range(k):
            out[r] = lcs_len_numba(flat[offsets[r]:offsets[r + 1]], b)
        return out

else:  # pragma: no cover
    lcs_len_numba = None
    lcs_many_numba = None


def _select_backend():
    requested = os.environ.get("PARENTKIT_BACKEND", "").strip().lower()
    if requested in ("", "auto"):
        return "numba" if NUMBA_AVAILABLE else "numpy"
    if requested not in ("numba", "numpy"):
        raise ValueError(
            f"PARENTKIT_BACKEND must be 'numba', 'numpy' or 'auto', got {requested!r}"
        )
    if requested == "numba" and not NUMBA_AVAILABLE:
        warnings.warn("numba is not installed; falling back to the numpy backend")
        return "numpy"
    return requested


BACKEND = _select_backend()

if BACKEND == "numba":
    lcs_len = lcs_len_numba
    lcs_many = lcs_many_numba
else:
    lcs_len = lcs_len_numpy
    lcs_many = lcs_many_numpy

"""Hot-loop scan kernel for leaf buckets, JIT-compiled when numba is present.

The pure-Python definition is the reference; numba compiles the identical
function, so both paths share one set of semantics.
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised via the _py alias
    HAVE_NUMBA = False


def _scan_bucket_py(points: np.ndarray, count: int, y: np.ndarray, removed_out: np.ndarray):
    """Scan ``points[:count]`` against candidate ``y`` in storage order.

    Returns ``(examined, dominated, n_removed)``.  Stops at the first stored
    point weakly dominating ``y``.  Points strictly dominated by ``y`` are
    removed by overwriting with the last point; the swapped-in point is
    re-examined at the same index.  Removal indices are recorded in
    ``removed_out`` (in scan order) so the caller can replay the swaps on
    payload bookkeeping.  ``examined`` counts one dominance comparison per
    stored point looked at.
    """
    m = y.shape[0]
    examined = 0
    n_removed = 0
    size = count
    i = 0
    while i < size:
        examined += 1
        p_le_y = True
        y_le_p = True
        for j in range(m):
            pj = points[i, j]
            yj = y[j]
            if pj > yj:
                p_le_y = False
                if not y_le_p:
                    break
            elif pj < yj:
                y_le_p = False
                if not p_le_y:
                    break
        if p_le_y:
            return examined, True, n_removed
        if y_le_p:
            size -= 1
            removed_out[n_removed] = i
            n_removed += 1
            points[i, :] = points[size, :]
        else:
            i += 1
    return examined, False, n_removed


if HAVE_NUMBA:
    scan_bucket = njit(cache=True)(_scan_bucket_py)
else:
    scan_bucket = _scan_bucket_py

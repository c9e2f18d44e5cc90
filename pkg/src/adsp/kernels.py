"""Backend selection for the lattice kernels.

The compiled extension is used when importable; ``ADSP_KERNELS=python``
forces the numpy fallback.
"""

from __future__ import annotations

import os

import numpy as np

from . import _fallback

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

BACKENDS = {"python": _fallback}
if _compiled is not None:
    BACKENDS["compiled"] = _compiled

if os.environ.get("ADSP_KERNELS", "").lower() == "python" or _compiled is None:
    BACKEND = "python"
else:
    BACKEND = "compiled"

NEG = int(_fallback.NEG)


def _impl():
    return BACKENDS[BACKEND]


def classify_box(alpha, edges) -> np.ndarray:
    """Root class code (0 none, 1 real, 2 imaginary) of every point of the box [0, alpha]."""
    return _impl().classify_box(np.asarray(alpha, dtype=np.int64), list(edges))


def knapsack(alpha, parts, values):
    parts = np.asarray(parts, dtype=np.int64).reshape(-1, len(alpha))
    if parts.size and not (parts.sum(axis=1) > 0).all():
        raise ValueError("knapsack parts must be nonzero")
    return _impl().knapsack(np.asarray(alpha, dtype=np.int64), parts, np.asarray(values, dtype=np.int64))


def nonzero(codes: np.ndarray) -> np.ndarray:
    return np.flatnonzero(codes)

"""Kernel backend selection.

The compiled extension is used when it imports; otherwise, or when the
environment sets ``GROUPSQUARES_KERNEL=python``, the pure-Python module
with identical semantics is used.  Both backends stay importable for
benchmarks and equivalence tests.
"""

from __future__ import annotations

import os

import numpy as np

from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

if _compiled is not None and os.environ.get("GROUPSQUARES_KERNEL", "").lower() != "python":
    _backend = _compiled
else:
    _backend = _kernels_py

BACKEND: str = _backend.BACKEND
ElementIndex = _backend.ElementIndex
closure = _backend.closure
all_permutations = _backend.all_permutations


def available_backends() -> dict[str, object]:
    out: dict[str, object] = {"python": _kernels_py}
    if _compiled is not None:
        out["cython"] = _compiled
    return out


def compose_rows(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Row-wise left-to-right product: out[i] = b[i][a[i]] (broadcasts)."""
    a, b = np.broadcast_arrays(a, b)
    return np.take_along_axis(b, a.astype(np.intp), axis=-1)


def invert_rows(a: np.ndarray) -> np.ndarray:
    out = np.empty_like(a)
    rows = np.arange(a.shape[0])[:, None]
    out[rows, a] = np.arange(a.shape[1], dtype=a.dtype)
    return out

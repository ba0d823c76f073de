"""Hot-kernel dispatch.

The numba backend is used when importable; set ``GZCLUST_PURE_NUMPY=1``
to force the pure-numpy fallback. Both backends are deterministic on
their own; they are not guaranteed bit-identical to each other.
"""

import importlib
import os
from contextlib import contextmanager

import numpy as np

from . import numpy_backend

_FORCE_NUMPY = os.environ.get("GZCLUST_PURE_NUMPY", "").lower() not in ("", "0", "false")

numba_backend = None
if not _FORCE_NUMPY:
    try:
        numba_backend = importlib.import_module(".numba_backend", __name__)
    except ImportError:
        numba_backend = None

_active = numba_backend if numba_backend is not None else numpy_backend


def backend_name():
    """Name of the backend currently serving kernel calls."""
    return "numba" if _active is numba_backend and numba_backend is not None else "numpy"


@contextmanager
def use_backend(name):
    """Temporarily route kernel calls to a specific backend (tests, benchmarks)."""
    global _active
    if name == "numpy":
        impl = numpy_backend
    elif name == "numba":
        if numba_backend is None:
            raise RuntimeError("numba backend not available")
        impl = numba_backend
    else:
        raise ValueError(f"unknown backend {name!r}")
    prev = _active
    _active = impl
    try:
        yield
    finally:
        _active = prev


def pairwise_sq_dists(x, centers):
    return _active.pairwise_sq_dists(x, centers)


def nearest_center(x, centers):
    return _active.nearest_center(x, centers)


def group_means(x, labels, k, fallback):
    return _active.group_means(x, labels, k, fallback)


def farthest_point(x, center, claimed):
    return _active.farthest_point(x, center, claimed)


def ward_chain(x):
    return _active.ward_chain(x)


def warmup():
    """Trigger JIT compilation on tiny inputs so timed runs are not skewed."""
    x = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [2.0, 2.0]])
    c = x[:2].copy()
    pairwise_sq_dists(x, c)
    labels, _ = nearest_center(x, c)
    group_means(x, labels, 2, c)
    farthest_point(x, c[0], np.zeros(4, dtype=np.bool_))
    ward_chain(x)

"""Lloyd-style k-means with squared-Euclidean objective.

Initial centers are k distinct data rows drawn with the run's seed.  The
loop alternates nearest-center assignment and mean updates and stops when
an assignment pass reproduces the previous one, or at ``max_iter``.  A
cluster that loses all members has its center moved onto the point
farthest from it, one cluster per repair, so the returned partition never
contains an empty cluster (unless the data has fewer distinct rows than
k, which cannot be fixed by any placement).
"""

import time

import numpy as np

from .. import _kernels as kernels
from .common import KMeansRun, as_matrix


def kmeans_objective(x, labels, centers):
    """Sum of squared distances from each row to its assigned center."""
    data = as_matrix(x)
    labels = np.asarray(labels, dtype=np.int64)
    centers = np.asarray(centers, dtype=np.float64)
    if labels.shape != (data.shape[0],):
        raise ValueError("labels length does not match the number of rows")
    if labels.min(initial=0) < 0 or labels.max(initial=-1) >= centers.shape[0]:
        raise ValueError("label index out of range for the given centers")
    diffs = data - centers[labels]
    return float(np.einsum("ij,ij->", diffs, diffs))


def _repair_empty(data, labels, centers, counts):
    # Each empty cluster grabs the point farthest from its stale center.
    # Points claimed within this pass are off limits so two empty clusters
    # cannot land on the same row.
    claimed = np.zeros(data.shape[0], dtype=np.bool_)
    for j in np.flatnonzero(counts == 0):
        idx = kernels.farthest_point(data, centers[j], claimed)
        if idx < 0:
            break  # more empty clusters than rows; nothing left to grab
        centers[j] = data[idx]
        claimed[idx] = True


def kmeans(x, k, seed, max_iter=300):
    data = as_matrix(x)
    n = data.shape[0]
    if k < 1:
        raise ValueError("k must be at least 1")
    if k > n:
        raise ValueError(f"k={k} exceeds the number of rows ({n})")
    if max_iter < 1:
        raise ValueError("max_iter must be at least 1")

    rng = np.random.default_rng(seed)
    centers = data[rng.choice(n, size=k, replace=False)].copy()

    history = []
    prev = None
    labels = None
    converged = False
    iterations = 0
    start = time.perf_counter()
    for it in range(1, max_iter + 1):
        labels, min_sq = kernels.nearest_center(data, centers)
        history.append(float(min_sq.sum()))
        iterations = it
        if prev is not None and np.array_equal(labels, prev):
            converged = True
            break
        prev = labels
        if it == max_iter:
            # Stop here so the returned centers are the ones the final
            # assignment was measured against.
            break
        centers, counts = kernels.group_means(data, labels, k, centers)
        if (counts == 0).any():
            _repair_empty(data, labels, centers, counts)

    # Hitting max_iter right after a cluster emptied can leave the repair
    # unapplied; finish it without counting extra Lloyd rounds.
    counts = np.bincount(labels, minlength=k)
    guard = 0
    while (counts == 0).any() and guard < k:
        centers, counts = kernels.group_means(data, labels, k, centers)
        _repair_empty(data, labels, centers, counts)
        labels, min_sq = kernels.nearest_center(data, centers)
        history.append(float(min_sq.sum()))
        counts = np.bincount(labels, minlength=k)
        guard += 1
    wall = time.perf_counter() - start

    return KMeansRun(
        labels=labels,
        k=k,
        objective=history[-1],
        iterations=iterations,
        converged=converged,
        wall_time=wall,
        objective_history=np.asarray(history),
        centers=centers,
    )

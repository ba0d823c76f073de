"""Pure-numpy implementations of the hot clustering kernels.

Reference path: always importable, used when numba is unavailable or
disabled via ``GZCLUST_PURE_NUMPY=1``. Every function here must stay
behaviourally interchangeable with its twin in ``numba_backend``.
"""

import numpy as np


def pairwise_sq_dists(x, centers):
    """Squared Euclidean distances, shape (n, k).

    Uses the |x|^2 - 2<x,c> + |c|^2 expansion; tiny negative values from
    cancellation are clamped to zero.
    """
    x2 = np.einsum("ij,ij->i", x, x)
    c2 = np.einsum("ij,ij->i", centers, centers)
    d2 = x2[:, None] - 2.0 * (x @ centers.T) + c2[None, :]
    np.maximum(d2, 0.0, out=d2)
    return d2


def nearest_center(x, centers):
    """Label of the nearest center per row plus the squared distance to it."""
    d2 = pairwise_sq_dists(x, centers)
    labels = np.argmin(d2, axis=1)
    return labels.astype(np.int64), d2[np.arange(x.shape[0]), labels]


def group_means(x, labels, k, fallback):
    """Per-cluster means; empty clusters keep the corresponding fallback row."""
    centers = np.empty((k, x.shape[1]), dtype=np.float64)
    counts = np.bincount(labels, minlength=k).astype(np.int64)
    for j in range(k):
        if counts[j] > 0:
            centers[j] = x[labels == j].mean(axis=0)
        else:
            centers[j] = fallback[j]
    return centers, counts


def farthest_point(x, center, claimed):
    """Index of the unclaimed row farthest (squared distance) from center."""
    d2 = np.einsum("ij,ij->i", x - center, x - center)
    d2[claimed] = -np.inf
    return int(np.argmax(d2))


def ward_chain(x):
    """Nearest-neighbor-chain agglomeration under the Ward merge cost.

    Returns an (n-1, 4) float64 array of rows [slot_a, slot_b, cost, size]
    in chain (merge) order. Slots are representative row indices; callers
    sort by cost and relabel to final tree node ids.

    Cost is the increase in total within-cluster sum of squares; successor
    costs are maintained with the Lance-Williams recurrence, so the whole
    run costs O(n^2) time and memory.
    """
    n = x.shape[0]
    d2 = pairwise_sq_dists(x, x)
    dist = 0.5 * d2
    np.fill_diagonal(dist, np.inf)

    size = np.ones(n, dtype=np.float64)
    alive = np.ones(n, dtype=bool)
    chain = np.empty(n, dtype=np.int64)
    chain_len = 0
    merges = np.empty((n - 1, 4), dtype=np.float64)

    for m in range(n - 1):
        if chain_len == 0:
            chain[0] = np.flatnonzero(alive)[0]
            chain_len = 1
        while True:
            a = chain[chain_len - 1]
            row = np.where(alive, dist[a], np.inf)
            row[a] = np.inf
            c = int(np.argmin(row))
            best = row[c]
            # on exact ties prefer the previous chain element so the
            # reciprocal pair is detected immediately
            if chain_len > 1 and row[chain[chain_len - 2]] == best:
                c = int(chain[chain_len - 2])
            if chain_len > 1 and c == chain[chain_len - 2]:
                chain_len -= 2
                break
            chain[chain_len] = c
            chain_len += 1

        sa, sc = size[a], size[c]
        merges[m, 0] = a
        merges[m, 1] = c
        merges[m, 2] = best
        merges[m, 3] = sa + sc

        keep, drop = (a, c) if a < c else (c, a)
        alive[drop] = False
        mask = alive.copy()
        mask[keep] = False
        sk = size[mask]
        new = ((sk + sa) * dist[a, mask] + (sk + sc) * dist[c, mask]
               - sk * best) / (sk + sa + sc)
        dist[keep, mask] = new
        dist[mask, keep] = new
        size[keep] = sa + sc

    return merges

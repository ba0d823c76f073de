"""Fuzzy c-means over squared Euclidean distances.

The membership matrix starts from a seeded random partition (rows
normalized to sum to one) and the loop alternates weighted-mean center
updates with membership updates until the largest membership change
drops to ``epsilon`` or below, or ``max_iter`` passes.  The recorded
objective is J_m evaluated with the fresh memberships against the
centers they were computed from, which makes the history non-increasing.
"""

import time

import numpy as np

from .. import _kernels as kernels
from .common import FcmRun, as_matrix


def membership_matrix(sq_dists, m):
    """Memberships (n, c) from squared distances (n, c) for fuzzifier m.

    Rows where a distance is exactly zero, or where the reciprocal-power
    form overflows, collapse to a crisp row split equally among the
    centers at minimal distance.
    """
    power = 1.0 / (m - 1.0)
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        inv = sq_dists ** -power
        u = inv / inv.sum(axis=1, keepdims=True)
    bad = ~np.isfinite(u).all(axis=1)
    if bad.any():
        closest = sq_dists[bad] == sq_dists[bad].min(axis=1, keepdims=True)
        u[bad] = closest / closest.sum(axis=1, keepdims=True)
    return u


def defuzzify(memberships):
    """Hard labels from a (c, n) membership matrix; ties pick the lowest row."""
    u = np.asarray(memberships, dtype=np.float64)
    if u.ndim != 2:
        raise ValueError("membership matrix must be 2-dimensional")
    col_sums = u.sum(axis=0)
    if u.min(initial=0.0) < 0 or np.abs(col_sums - 1.0).max(initial=0.0) > 1e-6:
        raise ValueError("membership columns must be non-negative and sum to 1")
    return np.argmax(u, axis=0).astype(np.int64)


def fcm(x, c, m=2.0, epsilon=1e-9, seed=0, max_iter=300, on_step=None):
    """Cluster ``x`` into ``c`` fuzzy groups; see the module docstring.

    ``on_step(iteration, memberships, centers, objective)`` is called once
    per iteration with the (c, n) memberships for that pass, for callers
    that want to watch the optimization (treat the arrays as read-only).
    """
    data = as_matrix(x)
    n = data.shape[0]
    if c < 2:
        raise ValueError("c must be at least 2")
    if c > n:
        raise ValueError(f"c={c} exceeds the number of rows ({n})")
    if not m > 1.0:
        raise ValueError("fuzzifier m must be greater than 1")
    if not epsilon > 0.0:
        raise ValueError("epsilon must be positive")
    if max_iter < 1:
        raise ValueError("max_iter must be at least 1")

    rng = np.random.default_rng(seed)
    u = rng.random((n, c))
    u /= u.sum(axis=1, keepdims=True)

    centers = np.empty((c, data.shape[1]))
    history = []
    converged = False
    iterations = 0
    start = time.perf_counter()
    for it in range(1, max_iter + 1):
        um = u**m
        weight = um.sum(axis=0)
        fresh = weight > 0
        centers[fresh] = (um.T[fresh] @ data) / weight[fresh, None]
        if it == 1 and not fresh.all():
            # No stale center to fall back on in the first pass.
            centers[~fresh] = data[0]
        sq = kernels.pairwise_sq_dists(data, centers)
        u_new = membership_matrix(sq, m)
        history.append(float(np.einsum("ij,ij->", u_new**m, sq)))
        delta = float(np.abs(u_new - u).max())
        u = u_new
        iterations = it
        if on_step is not None:
            on_step(it, u.T, centers, history[-1])
        if delta <= epsilon:
            converged = True
            break
    wall = time.perf_counter() - start

    memberships = np.ascontiguousarray(u.T)
    return FcmRun(
        labels=defuzzify(memberships),
        k=c,
        objective=history[-1],
        iterations=iterations,
        converged=converged,
        wall_time=wall,
        objective_history=np.asarray(history),
        memberships=memberships,
        centers=centers,
        fuzzifier=m,
    )

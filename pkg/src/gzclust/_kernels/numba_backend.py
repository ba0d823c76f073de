"""Numba-compiled twins of the numpy kernels.

Same signatures and semantics as ``numpy_backend``; loops are explicit so
numba can compile them to tight machine code. ``nogil=True`` lets the
harness run independent clustering cells on real threads.
"""

import numpy as np
from numba import njit

_JIT = dict(cache=True, nogil=True)


@njit(**_JIT)
def pairwise_sq_dists(x, centers):
    n, d = x.shape
    k = centers.shape[0]
    out = np.empty((n, k), dtype=np.float64)
    for i in range(n):
        for j in range(k):
            acc = 0.0
            for t in range(d):
                delta = x[i, t] - centers[j, t]
                acc += delta * delta
            out[i, j] = acc
    return out


@njit(**_JIT)
def nearest_center(x, centers):
    n, d = x.shape
    k = centers.shape[0]
    labels = np.empty(n, dtype=np.int64)
    min_sq = np.empty(n, dtype=np.float64)
    for i in range(n):
        best = np.inf
        arg = 0
        for j in range(k):
            acc = 0.0
            for t in range(d):
                delta = x[i, t] - centers[j, t]
                acc += delta * delta
            if acc < best:
                best = acc
                arg = j
        labels[i] = arg
        min_sq[i] = best
    return labels, min_sq


@njit(**_JIT)
def group_means(x, labels, k, fallback):
    n, d = x.shape
    centers = np.zeros((k, d), dtype=np.float64)
    counts = np.zeros(k, dtype=np.int64)
    for i in range(n):
        j = labels[i]
        counts[j] += 1
        for t in range(d):
            centers[j, t] += x[i, t]
    for j in range(k):
        if counts[j] > 0:
            for t in range(d):
                centers[j, t] /= counts[j]
        else:
            for t in range(d):
                centers[j, t] = fallback[j, t]
    return centers, counts


@njit(**_JIT)
def farthest_point(x, center, claimed):
    n, d = x.shape
    best = -np.inf
    arg = 0
    for i in range(n):
        if claimed[i]:
            continue
        acc = 0.0
        for t in range(d):
            delta = x[i, t] - center[t]
            acc += delta * delta
        if acc > best:
            best = acc
            arg = i
    return arg


@njit(**_JIT)
def ward_chain(x):
    n, d = x.shape
    dist = np.empty((n, n), dtype=np.float64)
    for i in range(n):
        dist[i, i] = np.inf
        for j in range(i + 1, n):
            acc = 0.0
            for t in range(d):
                delta = x[i, t] - x[j, t]
                acc += delta * delta
            dist[i, j] = 0.5 * acc
            dist[j, i] = dist[i, j]

    size = np.ones(n, dtype=np.float64)
    alive = np.ones(n, dtype=np.bool_)
    chain = np.empty(n, dtype=np.int64)
    chain_len = 0
    merges = np.empty((n - 1, 4), dtype=np.float64)

    for m in range(n - 1):
        if chain_len == 0:
            for i in range(n):
                if alive[i]:
                    chain[0] = i
                    break
            chain_len = 1
        while True:
            a = chain[chain_len - 1]
            c = -1
            best = np.inf
            if chain_len > 1:
                c = chain[chain_len - 2]
                best = dist[a, c]
            for b in range(n):
                if alive[b] and b != a and dist[a, b] < best:
                    best = dist[a, b]
                    c = b
            if chain_len > 1 and c == chain[chain_len - 2]:
                chain_len -= 2
                break
            chain[chain_len] = c
            chain_len += 1

        sa = size[a]
        sc = size[c]
        merges[m, 0] = a
        merges[m, 1] = c
        merges[m, 2] = best
        merges[m, 3] = sa + sc

        if a < c:
            keep, drop = a, c
        else:
            keep, drop = c, a
        alive[drop] = False
        denom_base = sa + sc
        for b in range(n):
            if alive[b] and b != keep:
                sk = size[b]
                new = ((sk + sa) * dist[a, b] + (sk + sc) * dist[c, b]
                       - sk * best) / (denom_base + sk)
                dist[keep, b] = new
                dist[b, keep] = new
        size[keep] = sa + sc

    return merges

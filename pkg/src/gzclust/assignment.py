"""Cluster-to-class assignment by confusion-matrix permutation search.

Cluster indices carry no meaning on their own, so after clustering the
k! ways of naming the clusters are scored by the number of galaxies that
land on the confusion diagonal, and the best-scoring permutation wins.
The search is exhaustive; ties go to the lexicographically smallest
mapping so reruns agree.
"""

import itertools

import numpy as np


def build_confusion(true_labels, predicted, k):
    """k x k matrix with rows = true class, columns = predicted label."""
    t = np.asarray(true_labels, dtype=np.int64)
    p = np.asarray(predicted, dtype=np.int64)
    if t.shape != p.shape or t.ndim != 1:
        raise ValueError("true and predicted labels must be 1-d and equal length")
    if k < 1:
        raise ValueError("k must be at least 1")
    for name, arr in (("true", t), ("predicted", p)):
        if arr.size and (arr.min() < 0 or arr.max() >= k):
            raise ValueError(f"{name} label out of range [0, {k})")
    cm = np.zeros((k, k), dtype=np.int64)
    np.add.at(cm, (t, p), 1)
    return cm


def best_permutation(confusion, max_exhaustive=8):
    """Mapping cluster -> class maximizing the matched-diagonal sum.

    Returns (mapping, diagonal_sum) where mapping[j] is the class name
    assigned to cluster j.  Refuses k beyond ``max_exhaustive`` since the
    search enumerates all k! permutations.
    """
    cm = np.asarray(confusion)
    if cm.ndim != 2 or cm.shape[0] != cm.shape[1]:
        raise ValueError("confusion matrix must be square")
    k = cm.shape[0]
    if k > max_exhaustive:
        raise ValueError(
            f"k={k} exceeds the exhaustive search cap ({max_exhaustive}); "
            "raise max_exhaustive to search anyway"
        )
    rows = cm.tolist()
    best_map = None
    best_sum = -1
    for perm in itertools.permutations(range(k)):
        total = sum(rows[perm[j]][j] for j in range(k))
        if total > best_sum:
            best_sum = total
            best_map = perm
    return best_map, int(best_sum)


def apply_mapping(predicted, mapping):
    """Rename cluster indices to class indices through ``mapping``."""
    p = np.asarray(predicted, dtype=np.int64)
    lookup = np.asarray(mapping, dtype=np.int64)
    if sorted(lookup.tolist()) != list(range(lookup.size)):
        raise ValueError("mapping must be a permutation of 0..k-1")
    if p.size and (p.min() < 0 or p.max() >= lookup.size):
        raise ValueError("predicted label out of range for the mapping")
    return lookup[p]

"""Agglomerative clustering with Ward's minimum-variance criterion.

Merges are found with a nearest-neighbor chain over Lance-Williams
updated costs, then reordered by non-decreasing cost and relabeled with
a union-find so the merge list reads like a bottom-up dendrogram: leaves
are 0..n-1, the t-th merge creates node n+t, and each recorded cost is
the increase in total within-cluster sum of squares that merge caused.
"""

from dataclasses import dataclass

import numpy as np

from .. import _kernels as kernels
from .common import as_matrix


@dataclass(frozen=True)
class MergeTree:
    """Full merge history: rows of (left, right, cost, size)."""

    merges: np.ndarray
    n_leaves: int

    @property
    def costs(self):
        return self.merges[:, 2]

    def total_within_ss(self, k):
        """Within-cluster sum of squares after cutting to k clusters."""
        return float(self.costs[: self.n_leaves - k].sum())


def agglomerative_ward(x):
    data = as_matrix(x)
    n = data.shape[0]
    if n < 2:
        raise ValueError("need at least 2 rows to build a merge tree")

    raw = kernels.ward_chain(data)
    order = np.argsort(raw[:, 2], kind="stable")
    raw = raw[order]

    # Chain output names clusters by a representative row; renumber so
    # node ids reflect the cost-sorted merge order.
    parent = np.arange(2 * n - 1)

    def find(i):
        root = i
        while parent[root] != root:
            root = parent[root]
        while parent[i] != root:
            parent[i], i = root, parent[i]
        return root

    merges = np.empty((n - 1, 4))
    for t in range(n - 1):
        a = find(int(raw[t, 0]))
        b = find(int(raw[t, 1]))
        node = n + t
        parent[a] = node
        parent[b] = node
        merges[t, 0] = min(a, b)
        merges[t, 1] = max(a, b)
        merges[t, 2] = raw[t, 2]
        merges[t, 3] = raw[t, 3]
    merges.setflags(write=False)
    return MergeTree(merges=merges, n_leaves=n)


def cut_tree(tree, k):
    """Labels for k clusters, numbered by each cluster's smallest leaf."""
    n = tree.n_leaves
    if not 1 <= k <= n:
        raise ValueError(f"k must be between 1 and {n}")

    parent = np.arange(2 * n - 1)
    for t in range(n - k):
        node = n + t
        parent[int(tree.merges[t, 0])] = node
        parent[int(tree.merges[t, 1])] = node

    def find(i):
        root = i
        while parent[root] != root:
            root = parent[root]
        while parent[i] != root:
            parent[i], i = root, parent[i]
        return root

    labels = np.empty(n, dtype=np.int64)
    label_of = {}
    for leaf in range(n):
        root = find(leaf)
        if root not in label_of:
            label_of[root] = len(label_of)
        labels[leaf] = label_of[root]
    return labels

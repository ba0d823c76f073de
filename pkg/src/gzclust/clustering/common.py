"""Shared result types and input coercion for the clustering algorithms."""

from dataclasses import dataclass

import numpy as np


def as_matrix(x):
    """Coerce a FeatureMatrix or array-like to a C-contiguous float64 matrix."""
    data = getattr(x, "data", x)
    data = np.ascontiguousarray(data, dtype=np.float64)
    if data.ndim != 2:
        raise ValueError("expected a 2-dimensional feature matrix")
    if data.shape[0] == 0:
        raise ValueError("feature matrix has no rows")
    return data


@dataclass
class ClusterRunResult:
    """Outcome of one clustering run.

    ``objective_history`` holds the objective once per iteration, measured
    at a fixed point in the update cycle, so monotonicity is checkable.
    """

    labels: np.ndarray
    k: int
    objective: float
    iterations: int
    converged: bool
    wall_time: float
    objective_history: np.ndarray


@dataclass
class KMeansRun(ClusterRunResult):
    centers: np.ndarray


@dataclass
class FcmRun(ClusterRunResult):
    memberships: np.ndarray  # (c, n); columns sum to 1
    centers: np.ndarray
    fuzzifier: float

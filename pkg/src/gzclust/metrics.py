"""Per-class and support-weighted precision, recall, and F1.

All three are computed from a confusion matrix whose rows are true
classes and whose columns are predicted classes.  A class with no
predictions (or no members) would divide zero by zero; those scores are
reported as 0.0 and the class is flagged so downstream consumers can
tell a genuine zero from an undefined one.
"""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class ClassMetrics:
    precision: np.ndarray
    recall: np.ndarray
    f1: np.ndarray
    support: np.ndarray
    undefined: np.ndarray  # True where any of the three scores hit 0/0


@dataclass(frozen=True)
class WeightedMetrics:
    precision: float
    recall: float
    f1: float
    support: int


def per_class(confusion):
    cm = np.asarray(confusion, dtype=np.float64)
    if cm.ndim != 2 or cm.shape[0] != cm.shape[1]:
        raise ValueError("confusion matrix must be square")
    if cm.min(initial=0.0) < 0:
        raise ValueError("confusion matrix entries must be non-negative")

    tp = np.diag(cm)
    predicted = cm.sum(axis=0)
    actual = cm.sum(axis=1)

    precision = np.divide(tp, predicted, out=np.zeros_like(tp), where=predicted > 0)
    recall = np.divide(tp, actual, out=np.zeros_like(tp), where=actual > 0)
    pr = precision + recall
    f1 = np.divide(2 * precision * recall, pr, out=np.zeros_like(tp), where=pr > 0)
    undefined = (predicted == 0) | (actual == 0) | (pr == 0)

    return ClassMetrics(
        precision=precision,
        recall=recall,
        f1=f1,
        support=actual.astype(np.int64),
        undefined=undefined,
    )


def weighted_average(class_metrics):
    """Support-weighted averages across classes."""
    support = class_metrics.support.astype(np.float64)
    total = support.sum()
    if total <= 0:
        raise ValueError("cannot weight metrics with zero total support")
    w = support / total
    return WeightedMetrics(
        precision=float(w @ class_metrics.precision),
        recall=float(w @ class_metrics.recall),
        f1=float(w @ class_metrics.f1),
        support=int(total),
    )

from .common import ClusterRunResult, FcmRun, KMeansRun
from .fcm import defuzzify, fcm, membership_matrix
from .kmeans import kmeans, kmeans_objective
from .ward import MergeTree, agglomerative_ward, cut_tree

__all__ = [
    "ClusterRunResult",
    "FcmRun",
    "KMeansRun",
    "MergeTree",
    "agglomerative_ward",
    "cut_tree",
    "defuzzify",
    "fcm",
    "kmeans",
    "kmeans_objective",
    "membership_matrix",
]

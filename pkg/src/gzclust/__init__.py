"""Galaxy morphology clustering from pre-extracted image features.

Volunteer vote fractions over a decision tree of morphology questions
are discretized into per-question class labels; galaxies eligible for a
question are clustered (k-means, fuzzy c-means, or agglomerative Ward)
with k set to the question's option count, clusters are matched to
classes by exhaustive confusion-matrix permutation search, and weighted
precision/recall/F1 plus timing are reported per question and method.
"""

from ._kernels import backend_name, use_backend, warmup
from .assignment import apply_mapping, best_permutation, build_confusion
from .clustering import (
    ClusterRunResult,
    FcmRun,
    KMeansRun,
    MergeTree,
    agglomerative_ward,
    cut_tree,
    defuzzify,
    fcm,
    kmeans,
    kmeans_objective,
    membership_matrix,
)
from .harness import (
    DEFAULT_SEEDS,
    METHODS,
    CellRecord,
    ExperimentConfig,
    QuestionResult,
    blob_schema,
    blob_votes,
    make_config,
    run_experiment,
    run_experiment_data,
    synth_blobs,
)
from .ingest import (
    ABSENT,
    FeatureMatrix,
    HardLabelTable,
    IngestError,
    Question,
    QuestionSchema,
    VoteTable,
    default_schema,
    discretize,
    eligible_galaxies,
    filter_min_classifications,
    load_features,
    load_schema,
    load_votes,
    split,
    write_features,
    write_schema,
    write_votes,
)
from .metrics import ClassMetrics, WeightedMetrics, per_class, weighted_average
from .report import emit_report

__version__ = "1.0.0"

__all__ = [
    "ABSENT",
    "DEFAULT_SEEDS",
    "METHODS",
    "CellRecord",
    "ClassMetrics",
    "ClusterRunResult",
    "ExperimentConfig",
    "FcmRun",
    "FeatureMatrix",
    "HardLabelTable",
    "IngestError",
    "KMeansRun",
    "MergeTree",
    "Question",
    "QuestionResult",
    "QuestionSchema",
    "VoteTable",
    "WeightedMetrics",
    "agglomerative_ward",
    "apply_mapping",
    "backend_name",
    "best_permutation",
    "blob_schema",
    "blob_votes",
    "build_confusion",
    "cut_tree",
    "default_schema",
    "defuzzify",
    "discretize",
    "eligible_galaxies",
    "emit_report",
    "fcm",
    "filter_min_classifications",
    "kmeans",
    "kmeans_objective",
    "load_features",
    "load_schema",
    "load_votes",
    "make_config",
    "membership_matrix",
    "per_class",
    "run_experiment",
    "run_experiment_data",
    "split",
    "synth_blobs",
    "use_backend",
    "warmup",
    "weighted_average",
    "write_features",
    "write_schema",
    "write_votes",
]

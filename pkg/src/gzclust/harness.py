"""Experiment orchestration: one clustering run per (question, method, seed).

Each decision-tree question is treated as its own classification problem:
galaxies that answered it often enough are selected, their feature rows
clustered with k equal to the question's option count, clusters renamed
by the best confusion-matrix permutation, and weighted metrics recorded.
Stochastic methods repeat across the configured seeds; the agglomerative
method is deterministic and runs once per question.

Wall time per cell covers the clustering call only (fit plus label
extraction), not ingestion or metric computation.
"""

import hashlib
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np
import yaml

from . import _kernels as kernels
from .assignment import apply_mapping, best_permutation, build_confusion
from .clustering import agglomerative_ward, cut_tree, defuzzify, fcm, kmeans
from .ingest import (
    ABSENT,
    FeatureMatrix,
    Question,
    QuestionSchema,
    VoteTable,
    default_schema,
    discretize,
    eligible_galaxies,
    load_features,
    load_schema,
    load_votes,
)
from .metrics import per_class, weighted_average

METHODS = ("kmeans", "fcm", "agglomerative")
STOCHASTIC_METHODS = ("kmeans", "fcm")
DEFAULT_SEEDS = tuple(range(10))
FORMATS = ("structured", "tables", "both")

_CONFIG_KEYS = (
    "features",
    "votes",
    "schema",
    "methods",
    "seeds",
    "threshold",
    "questions",
    "max_iter",
    "fuzzifier",
    "epsilon",
    "out",
    "workers",
    "format",
    "max_exhaustive",
)


@dataclass
class ExperimentConfig:
    features: str
    votes: str
    schema: str = None
    methods: tuple = METHODS
    seeds: tuple = DEFAULT_SEEDS
    threshold: float = 0.5
    questions: tuple = None
    max_iter: int = 300
    fuzzifier: float = 2.0
    epsilon: float = 1e-9
    out: str = "results"
    workers: int = 1
    format: str = "both"
    max_exhaustive: int = 8

    def __post_init__(self):
        self.methods = tuple(self.methods)
        if not self.methods:
            raise ValueError("at least one method is required")
        unknown = [m for m in self.methods if m not in METHODS]
        if unknown:
            raise ValueError(f"unknown methods: {unknown}; choose from {METHODS}")
        if len(set(self.methods)) != len(self.methods):
            raise ValueError("duplicate method names")
        self.seeds = tuple(int(s) for s in self.seeds)
        needs_seeds = any(m in STOCHASTIC_METHODS for m in self.methods)
        if needs_seeds and not self.seeds:
            raise ValueError("stochastic methods need at least one seed")
        if len(set(self.seeds)) != len(self.seeds):
            raise ValueError("duplicate seeds")
        if not 0 <= self.threshold <= 1:
            raise ValueError("threshold must be in [0, 1]")
        if self.questions is not None:
            self.questions = tuple(self.questions)
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")
        if not self.fuzzifier > 1:
            raise ValueError("fuzzifier must be greater than 1")
        if not self.epsilon > 0:
            raise ValueError("epsilon must be positive")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")
        if self.format not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}")


def load_config_file(path):
    """Read experiment settings from a YAML mapping of config keys."""
    with open(path) as fh:
        raw = yaml.safe_load(fh)
    if raw is None:
        return {}
    if not isinstance(raw, dict):
        raise ValueError(f"{path}: config file must contain a mapping")
    unknown = sorted(set(raw) - set(_CONFIG_KEYS))
    if unknown:
        raise ValueError(f"{path}: unknown config keys {unknown}")
    return raw


def make_config(config_path=None, **overrides):
    """Build an ExperimentConfig from an optional file plus overrides.

    Overrides with value ``None`` are ignored, so command-line flags only
    replace file settings when actually given.
    """
    settings = load_config_file(config_path) if config_path else {}
    for key, value in overrides.items():
        if key not in _CONFIG_KEYS:
            raise ValueError(f"unknown config key {key!r}")
        if value is not None:
            settings[key] = value
    missing = [k for k in ("features", "votes") if not settings.get(k)]
    if missing:
        raise ValueError(f"missing required settings: {missing}")
    return ExperimentConfig(**settings)


@dataclass
class CellRecord:
    """One clustering run on one question, with everything needed to audit it.

    ``confusion`` is in cluster space (rows true class, columns cluster);
    ``mapping`` is the permutation that renames clusters to classes, and
    the metrics are computed after applying it.  ``labels_digest`` is the
    SHA-256 of the mapped labels in selection order.
    """

    question: str
    method: str
    seed: int
    k: int
    support: int
    precision: float = None
    recall: float = None
    f1: float = None
    objective: float = None
    iterations: int = None
    converged: bool = None
    wall_time: float = None
    mapping: tuple = None
    diagonal_sum: int = None
    confusion: list = None
    undefined_classes: tuple = ()
    labels_digest: str = None
    error: str = None

    @property
    def ok(self):
        return self.error is None


@dataclass
class QuestionResult:
    """All records for one (question, method) pair plus seed aggregates."""

    question: str
    method: str
    k: int
    records: list = field(default_factory=list)

    @property
    def ok_records(self):
        return [r for r in self.records if r.ok]

    def aggregate(self):
        """Mean and sample standard deviation across successful seeds."""
        good = self.ok_records
        out = {"n_runs": len(self.records), "n_ok": len(good)}
        for name in ("precision", "recall", "f1", "wall_time"):
            values = [getattr(r, name) for r in good]
            if values:
                out[f"mean_{name}"] = float(np.mean(values))
                out[f"std_{name}"] = float(np.std(values, ddof=1)) if len(values) > 1 else 0.0
            else:
                out[f"mean_{name}"] = None
                out[f"std_{name}"] = None
        return out


def _labels_digest(labels):
    return hashlib.sha256(np.ascontiguousarray(labels, dtype="<i8").tobytes()).hexdigest()


def _cluster_once(x, k, method, seed, cfg):
    """Run one method and return (labels, objective, iterations, converged, wall)."""
    if method == "kmeans":
        run = kmeans(x, k, seed=seed, max_iter=cfg.max_iter)
        return run.labels, run.objective, run.iterations, run.converged, run.wall_time
    if method == "fcm":
        run = fcm(
            x, k, m=cfg.fuzzifier, epsilon=cfg.epsilon, seed=seed, max_iter=cfg.max_iter
        )
        return run.labels, run.objective, run.iterations, run.converged, run.wall_time
    if method == "agglomerative":
        start = time.perf_counter()
        tree = agglomerative_ward(x)
        labels = cut_tree(tree, k)
        wall = time.perf_counter() - start
        return labels, tree.total_within_ss(k), tree.n_leaves - 1, True, wall
    raise ValueError(f"unknown method {method!r}")


def _run_cell(question, method, seed, prep, cfg, keep_labels=False):
    """Run one cell; with ``keep_labels`` also return the raw cluster labels."""
    ids, x, y, k = prep
    record = CellRecord(question=question, method=method, seed=seed, k=k, support=len(y))
    labels = None
    try:
        if x.shape[0] < k:
            raise ValueError(
                f"only {x.shape[0]} eligible galaxies for {k} clusters"
            )
        labels, objective, iterations, converged, wall = _cluster_once(
            x, k, method, seed, cfg
        )
        confusion = build_confusion(y, labels, k)
        mapping, diagonal = best_permutation(confusion, cfg.max_exhaustive)
        mapped = apply_mapping(labels, mapping)
        cls = per_class(build_confusion(y, mapped, k))
        weighted = weighted_average(cls)
        record = replace(
            record,
            precision=weighted.precision,
            recall=weighted.recall,
            f1=weighted.f1,
            objective=float(objective),
            iterations=int(iterations),
            converged=bool(converged),
            wall_time=float(wall),
            mapping=tuple(mapping),
            diagonal_sum=diagonal,
            confusion=[[int(v) for v in row] for row in confusion],
            undefined_classes=tuple(int(i) for i in np.flatnonzero(cls.undefined)),
            labels_digest=_labels_digest(mapped),
        )
    except Exception as exc:  # isolate failures to their own cell
        record = replace(record, error=f"{type(exc).__name__}: {exc}")
    if keep_labels:
        return record, labels
    return record


def _prepare_question(question, features, votes, hard_labels, cfg):
    """Ids, feature rows, true labels, and k for one question's eligible galaxies."""
    schema = votes.schema
    k = schema.option_count(question)
    eligible = eligible_galaxies(votes, question, cfg.threshold)
    available = set(features.galaxy_ids)
    ids = [g for g in eligible if g in available]
    y = hard_labels.labels_for(question, ids)
    keep = y != ABSENT
    ids = [g for g, ok in zip(ids, keep) if ok]
    y = y[keep]
    x = features.rows_for(ids)
    return ids, x, y, k


def plan_cells(cfg, question_names):
    """The (question, method, seed) triples in deterministic run order."""
    cells = []
    for question in question_names:
        for method in cfg.methods:
            if method in STOCHASTIC_METHODS:
                cells.extend((question, method, seed) for seed in cfg.seeds)
            else:
                cells.append((question, method, None))
    return cells


def run_experiment_data(features, votes, cfg):
    """Run the full experiment grid on already-loaded data."""
    if not isinstance(features, FeatureMatrix) or not isinstance(votes, VoteTable):
        raise TypeError("expected FeatureMatrix and VoteTable inputs")
    schema = votes.schema
    question_names = cfg.questions if cfg.questions is not None else schema.names
    for q in question_names:
        schema.question(q)  # raises KeyError for unknown names

    hard_labels = discretize(votes, schema)
    prepared = {
        q: _prepare_question(q, features, votes, hard_labels, cfg)
        for q in question_names
    }

    kernels.warmup()  # absorb any one-time backend compilation before timing
    cells = plan_cells(cfg, question_names)
    if cfg.workers > 1:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            records = list(
                pool.map(
                    lambda cell: _run_cell(cell[0], cell[1], cell[2], prepared[cell[0]], cfg),
                    cells,
                )
            )
    else:
        records = [_run_cell(q, m, s, prepared[q], cfg) for q, m, s in cells]

    results = []
    by_pair = {}
    for record in records:
        pair = (record.question, record.method)
        if pair not in by_pair:
            by_pair[pair] = QuestionResult(
                question=record.question, method=record.method, k=record.k
            )
            results.append(by_pair[pair])
        by_pair[pair].records.append(record)
    return results


def run_experiment(cfg):
    """Load inputs from the configured paths and run the experiment grid."""
    schema = load_schema(cfg.schema) if cfg.schema else default_schema()
    features = load_features(cfg.features)
    votes = load_votes(cfg.votes, schema)
    return run_experiment_data(features, votes, cfg)


# ---------------------------------------------------------------------------
# synthetic data


def synth_blobs(n, k, d, separation, spread, seed):
    """Gaussian blobs with known labels for pipeline checks.

    Centers are drawn uniformly and redrawn until mutually at least
    ``separation`` apart; cluster sizes are balanced within one.  Returns
    (FeatureMatrix, labels).
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if n < k:
        raise ValueError("need at least one point per cluster")
    if d < 1:
        raise ValueError("d must be at least 1")
    if not separation > 0 or not spread > 0:
        raise ValueError("separation and spread must be positive")

    rng = np.random.default_rng(seed)
    side = 2.0 * separation * max(2.0, k ** (1.0 / d))
    centers = None
    for _ in range(200):
        candidate = rng.uniform(0.0, side, size=(k, d))
        diffs = candidate[:, None, :] - candidate[None, :, :]
        sq = (diffs**2).sum(axis=2)
        np.fill_diagonal(sq, np.inf)
        if sq.min() >= separation**2:
            centers = candidate
            break
    if centers is None:
        raise RuntimeError("could not place centers this far apart; lower separation")

    sizes = np.full(k, n // k, dtype=np.int64)
    sizes[: n % k] += 1
    labels = rng.permutation(np.repeat(np.arange(k), sizes))
    data = centers[labels] + rng.normal(0.0, spread, size=(n, d))
    ids = [f"blob{i:06d}" for i in range(n)]
    return FeatureMatrix(ids, data), labels.astype(np.int64)


def blob_schema(k):
    """Single-question schema whose options are the k blob identities."""
    return QuestionSchema((Question("blobs", tuple(f"blob {i}" for i in range(k))),))


def blob_votes(features, labels, k, total=40):
    """Unanimous one-question vote table matching the blob labels."""
    labels = np.asarray(labels, dtype=np.int64)
    n = features.n
    schema = blob_schema(k)
    fractions = np.zeros((n, k))
    fractions[np.arange(n), labels] = 1.0
    totals = np.full(n, total, dtype=np.int64)
    return VoteTable(
        galaxy_ids=list(features.galaxy_ids),
        total_classifications=totals,
        answered={"blobs": totals.copy()},
        fractions={"blobs": fractions},
        schema=schema,
    )

"""Command-line entry points.

``run`` executes the full experiment grid and writes reports, ``cluster``
runs one (question, method, seed) cell and prints its record, ``metrics``
recomputes scores from a saved labels file, and ``synth`` generates a
synthetic blob dataset in the same file formats the pipeline ingests.
"""

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from . import report as report_mod
from .assignment import apply_mapping, best_permutation, build_confusion
from .harness import (
    DEFAULT_SEEDS,
    METHODS,
    ExperimentConfig,
    _prepare_question,
    _run_cell,
    blob_schema,
    blob_votes,
    make_config,
    run_experiment,
    synth_blobs,
)
from .ingest import (
    default_schema,
    discretize,
    load_features,
    load_schema,
    load_votes,
    write_features,
    write_schema,
    write_votes,
)
from .metrics import per_class, weighted_average


def _csv_list(text):
    return tuple(part.strip() for part in text.split(",") if part.strip())


def _int_list(text):
    return tuple(int(part) for part in _csv_list(text))


def _add_data_args(parser, required):
    parser.add_argument("--features", required=required, help="feature CSV path")
    parser.add_argument("--votes", required=required, help="vote CSV path")
    parser.add_argument("--schema", help="question schema YAML (default: bundled)")
    parser.add_argument(
        "--threshold",
        type=float,
        default=None,
        help="minimum answered/total rate for eligibility (default 0.5)",
    )
    parser.add_argument(
        "--max-iter", type=int, default=None, help="iteration cap (default 300)"
    )


def build_parser():
    parser = argparse.ArgumentParser(
        prog="gzclust",
        description="Cluster galaxies per decision-tree question and score the result.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run the full experiment grid")
    _add_data_args(run, required=False)
    run.add_argument("--config", help="YAML config file; flags override its values")
    run.add_argument(
        "--methods",
        type=_csv_list,
        default=None,
        help=f"comma-separated subset of {','.join(METHODS)}",
    )
    run.add_argument(
        "--seeds",
        type=_int_list,
        default=None,
        help=f"comma-separated seeds (default {','.join(map(str, DEFAULT_SEEDS))})",
    )
    run.add_argument(
        "--questions", type=_csv_list, default=None, help="comma-separated question subset"
    )
    run.add_argument("--out", default=None, help="output directory (default results)")
    run.add_argument("--workers", type=int, default=None, help="parallel cells (default 1)")
    run.add_argument(
        "--format",
        choices=("structured", "tables", "both"),
        default=None,
        help="which artifacts to write (default both)",
    )

    cluster = sub.add_parser("cluster", help="run a single question/method cell")
    _add_data_args(cluster, required=True)
    cluster.add_argument("--question", required=True)
    cluster.add_argument("--method", required=True, choices=METHODS)
    cluster.add_argument("--seed", type=int, default=0)
    cluster.add_argument(
        "--labels-out", help="also write galaxy_id,true,predicted rows to this CSV"
    )

    metrics = sub.add_parser("metrics", help="recompute metrics from saved labels")
    metrics.add_argument("--labels", required=True, help="CSV of galaxy_id,true,predicted")
    metrics.add_argument(
        "--k", type=int, default=None, help="class count (default: max label + 1)"
    )

    synth = sub.add_parser("synth", help="generate a synthetic blob dataset")
    synth.add_argument("--n", type=int, default=300, help="number of galaxies")
    synth.add_argument("--k", type=int, default=3, help="number of blobs")
    synth.add_argument("--d", type=int, default=4, help="feature dimensions")
    synth.add_argument("--separation", type=float, default=6.0)
    synth.add_argument("--spread", type=float, default=1.0)
    synth.add_argument("--seed", type=int, default=0)
    synth.add_argument("--out", default="synth", help="output directory")

    return parser


def _cmd_run(args):
    cfg = make_config(
        config_path=args.config,
        features=args.features,
        votes=args.votes,
        schema=args.schema,
        methods=args.methods,
        seeds=args.seeds,
        threshold=args.threshold,
        questions=args.questions,
        max_iter=args.max_iter,
        out=args.out,
        workers=args.workers,
        format=args.format,
    )
    results = run_experiment(cfg)
    written = report_mod.emit_report(results, cfg.out, fmt=cfg.format, workers=cfg.workers)
    failures = sum(1 for res in results for r in res.records if not r.ok)
    for path in written:
        print(path)
    if failures:
        print(f"{failures} cell(s) failed; see the error fields in the report", file=sys.stderr)
    return 0


def _cmd_cluster(args):
    schema = load_schema(args.schema) if args.schema else default_schema()
    features = load_features(args.features)
    votes = load_votes(args.votes, schema)
    cfg = ExperimentConfig(
        features=args.features,
        votes=args.votes,
        schema=args.schema,
        methods=(args.method,),
        seeds=(args.seed,),
        threshold=args.threshold if args.threshold is not None else 0.5,
        max_iter=args.max_iter if args.max_iter is not None else 300,
        questions=(args.question,),
    )
    hard = discretize(votes, schema)
    prep = _prepare_question(args.question, features, votes, hard, cfg)
    seed = args.seed if args.method in ("kmeans", "fcm") else None
    record, labels = _run_cell(args.question, args.method, seed, prep, cfg, keep_labels=True)
    print(json.dumps(report_mod.record_dict(record), indent=2, sort_keys=True))
    if record.ok and args.labels_out:
        ids, _, y, _ = prep
        # Export raw cluster labels so `metrics` can redo the assignment.
        _write_labels(args.labels_out, ids, y, labels)
    return 0 if record.ok else 1


def _write_labels(path, ids, true_labels, predicted):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["galaxy_id", "true", "predicted"])
        for g, t, p in zip(ids, true_labels, predicted):
            writer.writerow([g, int(t), int(p)])


def _cmd_metrics(args):
    ids, true_labels, predicted = _read_labels(args.labels)
    k = args.k if args.k is not None else int(max(true_labels.max(), predicted.max()) + 1)
    confusion = build_confusion(true_labels, predicted, k)
    mapping, diagonal = best_permutation(confusion)
    mapped = apply_mapping(predicted, mapping)
    cls = per_class(build_confusion(true_labels, mapped, k))
    weighted = weighted_average(cls)
    payload = {
        "n": len(ids),
        "k": k,
        "mapping": list(mapping),
        "diagonal_sum": diagonal,
        "weighted": {
            "precision": weighted.precision,
            "recall": weighted.recall,
            "f1": weighted.f1,
            "support": weighted.support,
        },
        "per_class": [
            {
                "class": i,
                "precision": float(cls.precision[i]),
                "recall": float(cls.recall[i]),
                "f1": float(cls.f1[i]),
                "support": int(cls.support[i]),
                "undefined": bool(cls.undefined[i]),
            }
            for i in range(k)
        ],
    }
    print(json.dumps(payload, indent=2, sort_keys=True))
    return 0


def _read_labels(path):
    ids = []
    true_labels = []
    predicted = []
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise SystemExit(f"{path}: empty labels file")
    start = 1 if rows[0] and not rows[0][-1].lstrip("+-").isdigit() else 0
    for i, row in enumerate(rows[start:], start=start + 1):
        if len(row) != 3:
            raise SystemExit(f"{path}: line {i}: expected galaxy_id,true,predicted")
        ids.append(row[0])
        true_labels.append(int(row[1]))
        predicted.append(int(row[2]))
    return ids, np.asarray(true_labels, dtype=np.int64), np.asarray(predicted, dtype=np.int64)


def _cmd_synth(args):
    features, labels = synth_blobs(
        args.n, args.k, args.d, args.separation, args.spread, args.seed
    )
    votes = blob_votes(features, labels, args.k)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_features(out / "features.csv", features)
    write_votes(out / "votes.csv", votes)
    write_schema(out / "schema.yaml", blob_schema(args.k))
    for name in ("features.csv", "votes.csv", "schema.yaml"):
        print(out / name)
    return 0


def main(argv=None):
    args = build_parser().parse_args(argv)
    handlers = {
        "run": _cmd_run,
        "cluster": _cmd_cluster,
        "metrics": _cmd_metrics,
        "synth": _cmd_synth,
    }
    try:
        return handlers[args.command](args)
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Acceptance suite: one test per shipping criterion.

Each test prints a single ``[ACCEPTANCE] <name>: PASS|FAIL`` line (visible
with ``pytest -v -s`` or in captured output on failure) and states its
tolerance inline.  Everything here runs on synthetic data only.
"""

import json
import time

import numpy as np
import pytest
from oracles import brute_force_best_two_partition, greedy_ward_oracle

import gzclust as gz
from gzclust.report import emit_report

linear_sum_assignment = pytest.importorskip("scipy.optimize").linear_sum_assignment


def _verdict(name, ok, detail=""):
    status = "PASS" if ok else "FAIL"
    suffix = f" ({detail})" if detail else ""
    print(f"[ACCEPTANCE] {name}: {status}{suffix}")
    assert ok, f"{name} failed{suffix}"


def test_kmeans_objective_never_increases():
    """J is non-increasing at every iteration; tolerance 0; < 10 s total."""
    start = time.perf_counter()
    rng = np.random.default_rng(0)
    violations = 0
    for i in range(50):
        x = rng.normal(size=(500, 32))
        run = gz.kmeans(x, 2 + i % 5, seed=i)
        if (np.diff(run.objective_history) > 0).any():
            violations += 1
    elapsed = time.perf_counter() - start
    _verdict(
        "kmeans objective monotone",
        violations == 0 and elapsed < 10.0,
        f"violations={violations}, runtime={elapsed:.2f}s",
    )


def test_kmeans_reaches_global_optimum_on_micro_instances():
    """n=12, d=1, k=2: >= 8 of 10 seeds hit the brute-force optimum
    (relative tolerance 1e-10) on each frozen two-group instance."""
    worst = 10
    for instance_seed in (0, 1, 5):
        rng = np.random.default_rng(instance_seed)
        x = np.concatenate(
            [rng.normal(0.0, 1.0, (6, 1)), rng.normal(4.0, 1.0, (6, 1))]
        )
        j_star = brute_force_best_two_partition(x)
        hits = sum(
            gz.kmeans(x, 2, seed=s).objective <= j_star * (1 + 1e-10)
            for s in range(10)
        )
        worst = min(worst, hits)
    _verdict(
        "kmeans micro global optimum",
        worst >= 8,
        f"worst instance: {worst}/10 seeds optimal (need >= 8)",
    )


def test_fcm_partition_columns_and_objective():
    """Membership columns sum to 1 within 1e-9 at every iteration on 20
    instances; the objective is non-increasing within 1e-9 relative."""
    rng = np.random.default_rng(1)
    worst_dev = 0.0
    worst_uptick = 0.0
    for i in range(20):
        x = rng.normal(size=(200, 8))
        devs = []
        run = gz.fcm(
            x,
            2 + i % 4,
            seed=i,
            on_step=lambda it, u, c, j: devs.append(np.abs(u.sum(axis=0) - 1.0).max()),
        )
        worst_dev = max(worst_dev, max(devs))
        h = run.objective_history
        if len(h) > 1:
            rel = np.diff(h) / np.maximum(1.0, np.abs(h[:-1]))
            worst_uptick = max(worst_uptick, float(rel.max()))
    _verdict(
        "fcm partition constraint",
        worst_dev < 1e-9 and worst_uptick <= 1e-9,
        f"max column-sum deviation={worst_dev:.2e}, max relative uptick={worst_uptick:.2e}",
    )


def test_fcm_closed_form_membership():
    """Centers 0 and 1, point 0.25, m=2 gives memberships (0.9, 0.1)
    within 1e-12."""
    u = gz.membership_matrix(np.array([[0.25**2, 0.75**2]]), 2.0)
    err = float(np.abs(u - np.array([[0.9, 0.1]])).max())
    _verdict("fcm closed-form membership", err < 1e-12, f"max error={err:.2e}")


def test_ward_matches_naive_oracle():
    """30 random instances, n <= 64: merge costs match a recompute-all
    oracle within 1e-9 relative; merge pairs identical off cost ties."""
    rng = np.random.default_rng(2)
    ok = True
    detail = ""
    for trial in range(30):
        n = int(rng.integers(4, 65))
        d = int(rng.integers(1, 6))
        x = rng.normal(size=(n, d))
        tree = gz.agglomerative_ward(x)
        oracle = greedy_ward_oracle(x)
        if not np.allclose(tree.merges[:, 2], oracle[:, 2], rtol=1e-9, atol=1e-12):
            ok, detail = False, f"cost mismatch on trial {trial}"
            break
        costs = oracle[:, 2]
        tied = np.zeros(len(costs), dtype=bool)
        close = np.isclose(costs[1:], costs[:-1], rtol=1e-12)
        tied[1:] |= close
        tied[:-1] |= close
        if not np.array_equal(tree.merges[~tied][:, [0, 1]], oracle[~tied][:, [0, 1]]):
            ok, detail = False, f"pair mismatch on trial {trial}"
            break
    _verdict("ward naive-oracle equivalence", ok, detail or "30/30 trials matched")


def test_permutation_matches_assignment_oracle():
    """100 random confusion matrices, k <= 6: the exhaustive search's
    diagonal sum equals the optimal-assignment oracle's maximum exactly."""
    rng = np.random.default_rng(3)
    mismatches = 0
    for _ in range(100):
        k = int(rng.integers(2, 7))
        cm = rng.integers(0, 50, size=(k, k))
        _, total = gz.best_permutation(cm)
        rows, cols = linear_sum_assignment(cm, maximize=True)
        if total != int(cm[rows, cols].sum()):
            mismatches += 1
    _verdict(
        "permutation assignment optimality",
        mismatches == 0,
        f"mismatches={mismatches}/100",
    )


def test_metrics_hand_derived_values():
    """per_class on [[3,1],[2,4]] gives precision (0.6, 0.8), recall
    (0.75, 0.6667), f1 (0.6667, 0.7273) within 1e-4; weighted f1 with
    supports (4, 6) equals 0.7031 within 1e-4."""
    m = gz.per_class(np.array([[3, 1], [2, 4]]))
    w = gz.weighted_average(m)
    checks = [
        np.allclose(m.precision, [0.6, 0.8], atol=1e-4),
        np.allclose(m.recall, [0.75, 0.6667], atol=1e-4),
        np.allclose(m.f1, [0.6667, 0.7273], atol=1e-4),
        abs(w.f1 - 0.7031) < 1e-4,
    ]
    _verdict(
        "metrics hand-derived values",
        all(checks),
        f"precision={m.precision.round(4).tolist()}, recall={m.recall.round(4).tolist()}, "
        f"f1={m.f1.round(4).tolist()}, weighted f1={w.f1:.4f}",
    )


def test_end_to_end_blob_recovery():
    """3 blobs (n=3000, d=16, separation/spread=10): every method's
    best-objective run reaches weighted F1 >= 0.99; < 60 s total."""
    start = time.perf_counter()
    features, labels = gz.synth_blobs(3000, 3, 16, separation=10.0, spread=1.0, seed=0)
    votes = gz.blob_votes(features, labels, 3)
    cfg = gz.ExperimentConfig(features="mem", votes="mem", seeds=tuple(range(10)))
    results = gz.run_experiment_data(features, votes, cfg)
    best_f1 = {}
    for res in results:
        good = res.ok_records
        best = min(good, key=lambda r: r.objective) if good else None
        best_f1[res.method] = best.f1 if best else 0.0
    elapsed = time.perf_counter() - start
    _verdict(
        "end-to-end blob recovery",
        all(v >= 0.99 for v in best_f1.values()) and elapsed < 60.0,
        ", ".join(f"{m}={v:.4f}" for m, v in best_f1.items())
        + f", runtime={elapsed:.1f}s",
    )


def test_repeat_runs_emit_identical_reports(tmp_path):
    """The same configuration run twice produces byte-identical
    structured reports (wall times live in a separate sidecar)."""
    data_dir = tmp_path / "data"
    features, labels = gz.synth_blobs(400, 3, 6, separation=9.0, spread=1.0, seed=4)
    votes = gz.blob_votes(features, labels, 3)
    data_dir.mkdir()
    gz.write_features(data_dir / "features.csv", features)
    gz.write_votes(data_dir / "votes.csv", votes)
    gz.write_schema(data_dir / "schema.yaml", votes.schema)

    payloads = []
    for run_dir in ("one", "two"):
        cfg = gz.make_config(
            features=str(data_dir / "features.csv"),
            votes=str(data_dir / "votes.csv"),
            schema=str(data_dir / "schema.yaml"),
            seeds=(0, 1, 2),
            out=str(tmp_path / run_dir),
        )
        results = gz.run_experiment(cfg)
        emit_report(results, cfg.out, fmt="structured", workers=cfg.workers)
        payloads.append((tmp_path / run_dir / "report.json").read_bytes())
    identical = payloads[0] == payloads[1]
    _verdict(
        "repeat-run determinism",
        identical,
        f"report.json identical={identical}, {len(payloads[0])} bytes",
    )


def test_agglomerative_at_least_3x_slower_than_kmeans():
    """n=5000, d=64, k=3: mean agglomerative wall time >= 3x mean k-means
    wall time."""
    rng = np.random.default_rng(5)
    x = rng.normal(size=(5000, 64))
    km = float(np.mean([gz.kmeans(x, 3, seed=s).wall_time for s in range(3)]))
    ward_times = []
    for _ in range(2):
        t0 = time.perf_counter()
        tree = gz.agglomerative_ward(x)
        gz.cut_tree(tree, 3)
        ward_times.append(time.perf_counter() - t0)
    ward = float(np.mean(ward_times))
    ratio = ward / km
    _verdict(
        "agglomerative timing trend",
        ratio >= 3.0,
        f"kmeans={km:.3f}s, agglomerative={ward:.3f}s, ratio={ratio:.1f}x (need >= 3x)",
    )


def _default_schema_votes(n, seed):
    """Synthetic unanimous votes for every question of the default schema."""
    schema = gz.default_schema()
    rng = np.random.default_rng(seed)
    ids = [f"g{i:04d}" for i in range(n)]
    totals = np.full(n, 40, dtype=np.int64)
    answered = {}
    fractions = {}
    for q in schema.questions:
        answered[q.name] = totals.copy()
        pick = rng.integers(0, q.option_count, size=n)
        f = np.zeros((n, q.option_count))
        f[np.arange(n), pick] = 1.0
        fractions[q.name] = f
    return gz.VoteTable(ids, totals, answered, fractions, schema)


def test_tables_cover_all_questions_with_markers(tmp_path):
    """Emitted tables have exactly the 10 decision-tree questions as rows
    and the three methods as columns, with best/worst markers per row."""
    n = 80
    votes = _default_schema_votes(n, seed=6)
    rng = np.random.default_rng(7)
    features = gz.FeatureMatrix(votes.galaxy_ids, rng.normal(size=(n, 5)))
    cfg = gz.ExperimentConfig(features="mem", votes="mem", seeds=(0,))
    results = gz.run_experiment_data(features, votes, cfg)
    emit_report(results, tmp_path, fmt="tables")

    expected_questions = gz.default_schema().names
    ok = True
    details = []
    for name in ("table_time", "table_precision", "table_recall", "table_f1"):
        lines = [
            l for l in (tmp_path / f"{name}.md").read_text().splitlines()
            if l.startswith("|")
        ]
        header = [c.strip() for c in lines[0].strip("|").split("|")]
        body = lines[2:]
        questions = [l.strip("|").split("|")[0].strip() for l in body]
        questions = [q for q in questions if q != "Total Time"]
        if header[1:] != ["kmeans", "fcm", "agglomerative"]:
            ok = False
            details.append(f"{name}: wrong columns {header[1:]}")
        if questions != expected_questions:
            ok = False
            details.append(f"{name}: wrong rows")
        rows_marked = sum(1 for l in body if "**" in l)
        if rows_marked < len(expected_questions):
            ok = False
            details.append(f"{name}: only {rows_marked} rows carry a best marker")
    _verdict(
        "report table structure",
        ok,
        "; ".join(details) or "4 tables x 10 question rows x 3 method columns",
    )

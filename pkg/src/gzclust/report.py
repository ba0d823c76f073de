"""Report emission: structured JSON plus summary markdown tables.

``report.json`` holds every per-run record except wall-clock times and
is byte-identical across repeat runs of the same configuration.  Wall
times vary run to run, so they live in a ``timings.json`` sidecar keyed
by the same (question, method, seed) triples, alongside the worker count
used.  The four markdown tables aggregate seeds per question: mean wall
time, precision, recall, and F1, with the best cell per row in bold and
the worst in underscores.  For the time table best means fastest.
"""

import json
from pathlib import Path

REPORT_NAME = "report.json"
TIMINGS_NAME = "timings.json"
TABLE_METRICS = (
    ("time", "mean_wall_time", "Mean wall time (s)"),
    ("precision", "mean_precision", "Weighted precision"),
    ("recall", "mean_recall", "Weighted recall"),
    ("f1", "mean_f1", "Weighted F1"),
)


def record_dict(record):
    """JSON-ready view of a CellRecord, wall time excluded."""
    return {
        "question": record.question,
        "method": record.method,
        "seed": record.seed,
        "k": record.k,
        "support": record.support,
        "precision": record.precision,
        "recall": record.recall,
        "f1": record.f1,
        "objective": record.objective,
        "iterations": record.iterations,
        "converged": record.converged,
        "mapping": list(record.mapping) if record.mapping is not None else None,
        "diagonal_sum": record.diagonal_sum,
        "confusion": record.confusion,
        "undefined_classes": list(record.undefined_classes),
        "labels_digest": record.labels_digest,
        "error": record.error,
    }


def report_payload(results):
    records = [record_dict(r) for res in results for r in res.records]
    aggregates = [
        {"question": res.question, "method": res.method, "k": res.k, **_agg_no_time(res)}
        for res in results
    ]
    return {"schema_version": 1, "records": records, "aggregates": aggregates}


def _agg_no_time(result):
    agg = result.aggregate()
    return {k: v for k, v in agg.items() if "wall_time" not in k}


def timings_payload(results, workers):
    cells = [
        {
            "question": r.question,
            "method": r.method,
            "seed": r.seed,
            "wall_time": r.wall_time,
        }
        for res in results
        for r in res.records
    ]
    return {"workers": workers, "cells": cells}


def _dump(payload, path):
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _fmt(value):
    if value is None:
        return "n/a"
    return f"{value:.3f}"


def _mark(cells, metric):
    """Wrap the best cell per row in ** and the worst in _ markers."""
    scored = [(i, v) for i, v in enumerate(cells) if v is not None]
    if not scored:
        return ["n/a"] * len(cells)
    smaller_is_better = metric == "time"
    best_i = min(scored, key=lambda iv: iv[1] if smaller_is_better else -iv[1])[0]
    worst_i = min(scored, key=lambda iv: -iv[1] if smaller_is_better else iv[1])[0]
    out = []
    for i, value in enumerate(cells):
        text = _fmt(value)
        if value is None:
            out.append(text)
        elif i == best_i:
            out.append(f"**{text}**")
        elif i == worst_i and worst_i != best_i:
            out.append(f"_{text}_")
        else:
            out.append(text)
    return out


def table_lines(results, metric, agg_key, title):
    """Markdown table for one metric: questions as rows, methods as columns."""
    questions = []
    methods = []
    values = {}
    for res in results:
        if res.question not in questions:
            questions.append(res.question)
        if res.method not in methods:
            methods.append(res.method)
        values[(res.question, res.method)] = res.aggregate().get(agg_key)

    lines = [f"# {title}", ""]
    lines.append("| Question | " + " | ".join(methods) + " |")
    lines.append("| --- |" + " --- |" * len(methods))
    totals = {m: 0.0 for m in methods}
    totals_ok = {m: True for m in methods}
    for q in questions:
        row = [values.get((q, m)) for m in methods]
        for m, v in zip(methods, row):
            if v is None:
                totals_ok[m] = False
            else:
                totals[m] += v
        lines.append(f"| {q} | " + " | ".join(_mark(row, metric)) + " |")
    if metric == "time":
        cells = [
            _fmt(totals[m] if totals_ok[m] else None) for m in methods
        ]
        lines.append("| Total Time | " + " | ".join(cells) + " |")
    return lines


def emit_report(results, out_dir, fmt="both", workers=1):
    """Write the configured artifacts under ``out_dir``; returns the paths.

    Emission is a pure function of ``results``: emitting the same results
    twice produces byte-identical files.
    """
    if not results:
        raise ValueError("no results to report")
    if fmt not in ("structured", "tables", "both"):
        raise ValueError(f"unknown format {fmt!r}")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    if fmt in ("structured", "both"):
        report_path = out / REPORT_NAME
        _dump(report_payload(results), report_path)
        written.append(report_path)
        timings_path = out / TIMINGS_NAME
        _dump(timings_payload(results, workers), timings_path)
        written.append(timings_path)
    if fmt in ("tables", "both"):
        for metric, agg_key, title in TABLE_METRICS:
            path = out / f"table_{metric}.md"
            path.write_text("\n".join(table_lines(results, metric, agg_key, title)) + "\n")
            written.append(path)
    return written

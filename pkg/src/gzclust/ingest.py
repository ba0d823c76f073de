"""Loading and preparation of galaxy features and volunteer vote tables.

File formats (all comma-separated text, optional header row detected by a
non-numeric second column):

* feature file: galaxy id, then d float columns
* vote file: galaxy id, total_classifications, then per question in schema
  order: answered_count followed by one vote-fraction column per option

The question schema itself is a small YAML document listing question names
and their option names; the Galaxy Zoo DECaLS (GZD-5) schema ships with the
package as ``data/gzd5_schema.yaml``.
"""

import csv
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np
import pandas as pd
import yaml

#: label value marking "no volunteer answered this question for this galaxy"
ABSENT = -1

_FRACTION_SUM_TOL = 1e-6


class IngestError(ValueError):
    """Raised for malformed input files; message carries the 1-based row number."""


def _is_number(cell):
    try:
        float(cell)
    except ValueError:
        return False
    return True


# ---------------------------------------------------------------------------
# domain types


@dataclass(frozen=True)
class Question:
    name: str
    options: tuple

    @property
    def option_count(self):
        return len(self.options)


@dataclass(frozen=True)
class QuestionSchema:
    """Ordered decision-tree questions, each with >= 2 answer options."""

    questions: tuple

    def __post_init__(self):
        names = [q.name for q in self.questions]
        if len(set(names)) != len(names):
            raise ValueError("duplicate question names in schema")
        for q in self.questions:
            if q.option_count < 2:
                raise ValueError(f"question {q.name!r} has fewer than 2 options")

    @property
    def names(self):
        return [q.name for q in self.questions]

    def question(self, name):
        for q in self.questions:
            if q.name == name:
                return q
        raise KeyError(f"unknown question {name!r}")

    def option_count(self, name):
        return self.question(name).option_count


@dataclass
class FeatureMatrix:
    """n galaxies x d real-valued features with stable string identifiers."""

    galaxy_ids: list
    data: np.ndarray
    _index: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        self.data = np.ascontiguousarray(self.data, dtype=np.float64)
        if self.data.ndim != 2:
            raise ValueError("feature data must be 2-dimensional")
        if not np.isfinite(self.data).all():
            raise ValueError("feature data contains non-finite values")
        if len(self.galaxy_ids) != self.data.shape[0]:
            raise ValueError("galaxy id count does not match row count")
        if len(set(self.galaxy_ids)) != len(self.galaxy_ids):
            raise ValueError("duplicate galaxy ids")

    @property
    def n(self):
        return self.data.shape[0]

    @property
    def d(self):
        return self.data.shape[1]

    def rows_for(self, ids):
        """Feature rows for the given ids, in the given order (contiguous copy)."""
        if self._index is None:
            self._index = {g: i for i, g in enumerate(self.galaxy_ids)}
        idx = np.fromiter((self._index[g] for g in ids), dtype=np.int64, count=len(ids))
        return np.ascontiguousarray(self.data[idx])


@dataclass
class VoteTable:
    """Per-galaxy volunteer vote fractions and answer counts, schema-aligned.

    ``answered[q]`` is an (n,) int array, ``fractions[q]`` an (n, options)
    float array for each question name ``q`` in the schema.
    """

    galaxy_ids: list
    total_classifications: np.ndarray
    answered: dict
    fractions: dict
    schema: QuestionSchema

    def __post_init__(self):
        self.total_classifications = np.asarray(self.total_classifications, dtype=np.int64)
        n = len(self.galaxy_ids)
        if self.total_classifications.shape != (n,):
            raise ValueError("total_classifications length mismatch")
        if (self.total_classifications < 0).any():
            raise ValueError("negative total_classifications")
        for q in self.schema.questions:
            a = np.asarray(self.answered[q.name], dtype=np.int64)
            f = np.asarray(self.fractions[q.name], dtype=np.float64)
            if a.shape != (n,) or f.shape != (n, q.option_count):
                raise ValueError(f"vote arrays for {q.name!r} have wrong shape")
            if (a < 0).any():
                raise ValueError(f"negative answered_count for {q.name!r}")
            if (a > self.total_classifications).any():
                raise ValueError(f"answered_count exceeds total_classifications for {q.name!r}")
            if (f < 0).any() or (f > 1).any():
                raise ValueError(f"vote fraction outside [0, 1] for {q.name!r}")
            sums = f.sum(axis=1)
            bad = (a > 0) & (np.abs(sums - 1.0) > _FRACTION_SUM_TOL)
            if bad.any():
                i = int(np.flatnonzero(bad)[0])
                raise ValueError(
                    f"fractions for {q.name!r} sum to {sums[i]:.8f} (galaxy {self.galaxy_ids[i]})"
                )
            self.answered[q.name] = a
            self.fractions[q.name] = f

    @property
    def n(self):
        return len(self.galaxy_ids)

    def subset(self, mask):
        """New VoteTable restricted to rows where mask is True, order preserved."""
        mask = np.asarray(mask, dtype=bool)
        ids = [g for g, keep in zip(self.galaxy_ids, mask) if keep]
        return VoteTable(
            galaxy_ids=ids,
            total_classifications=self.total_classifications[mask],
            answered={q: a[mask] for q, a in self.answered.items()},
            fractions={q: f[mask] for q, f in self.fractions.items()},
            schema=self.schema,
        )


@dataclass
class HardLabelTable:
    """Discrete class per galaxy and question; ``ABSENT`` where unanswered."""

    galaxy_ids: list
    labels: dict
    schema: QuestionSchema

    def labels_for(self, question, ids):
        """Labels for the given question restricted to ids, in id order."""
        index = {g: i for i, g in enumerate(self.galaxy_ids)}
        idx = np.fromiter((index[g] for g in ids), dtype=np.int64, count=len(ids))
        return self.labels[question][idx]


# ---------------------------------------------------------------------------
# schema loading


def load_schema(path):
    """Parse a question-schema YAML file."""
    with open(path) as fh:
        doc = yaml.safe_load(fh)
    if not isinstance(doc, dict) or "questions" not in doc:
        raise IngestError(f"{path}: expected a mapping with a 'questions' list")
    questions = []
    for entry in doc["questions"]:
        try:
            questions.append(Question(str(entry["name"]), tuple(str(o) for o in entry["options"])))
        except (KeyError, TypeError) as exc:
            raise IngestError(f"{path}: malformed question entry {entry!r}") from exc
    return QuestionSchema(tuple(questions))


def default_schema():
    """The bundled 10-question GZD-5 decision-tree schema."""
    ref = resources.files("gzclust").joinpath("data/gzd5_schema.yaml")
    with resources.as_file(ref) as path:
        return load_schema(path)


def write_schema(path, schema):
    """Write a QuestionSchema back out in the YAML form load_schema reads."""
    doc = {
        "questions": [
            {"name": q.name, "options": list(q.options)} for q in schema.questions
        ]
    }
    with open(path, "w") as fh:
        yaml.safe_dump(doc, fh, sort_keys=False)


# ---------------------------------------------------------------------------
# feature files


def _sniff_header(path, min_cols=2):
    """Return (has_header, width) from the first line; raises on empty file."""
    try:
        with open(path, newline="") as fh:
            first = fh.readline()
    except OSError as exc:
        raise IngestError(f"cannot read {path}: {exc}") from exc
    if not first.strip():
        raise IngestError(f"{path}: file is empty")
    cells = next(csv.reader([first]))
    if len(cells) < min_cols:
        raise IngestError(f"{path}: row 1 has {len(cells)} columns, expected at least {min_cols}")
    return not _is_number(cells[1]), len(cells)


def _scan_rows(path, skip, width):
    """Slow diagnostic pass: pinpoint the first malformed row and raise."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        for lineno, row in enumerate(reader, start=1):
            if lineno <= skip or not row:
                continue
            if len(row) != width:
                raise IngestError(
                    f"{path}: line {lineno} has {len(row)} columns, expected {width}"
                )
            for cell in row[1:]:
                try:
                    value = float(cell)
                except ValueError:
                    raise IngestError(
                        f"{path}: line {lineno} has non-numeric cell {cell!r}"
                    ) from None
                if not math.isfinite(value):
                    raise IngestError(
                        f"{path}: line {lineno} has non-finite value {cell!r}"
                    )


def _check_unique_ids(path, ids, skip):
    seen = {}
    for i, g in enumerate(ids):
        if g in seen:
            raise IngestError(
                f"{path}: line {i + skip + 1} duplicates galaxy id {g!r} "
                f"(first seen at line {seen[g] + skip + 1})"
            )
        seen[g] = i


def load_features(path):
    """Load a feature CSV into a FeatureMatrix; row order follows the file."""
    path = Path(path)
    has_header, width = _sniff_header(path)
    skip = 1 if has_header else 0
    try:
        df = pd.read_csv(path, header=None, skiprows=skip, dtype={0: str},
                         keep_default_na=False, engine="c", float_precision="round_trip")
    except Exception:
        _scan_rows(path, skip, width)
        raise IngestError(f"{path}: failed to parse") from None
    if df.shape[0] == 0:
        raise IngestError(f"{path}: no data rows")
    ids = [str(g) for g in df.iloc[:, 0]]
    try:
        data = df.iloc[:, 1:].to_numpy(dtype=np.float64)
    except (TypeError, ValueError):
        _scan_rows(path, skip, width)
        raise IngestError(f"{path}: failed to parse") from None
    if not np.isfinite(data).all():
        _scan_rows(path, skip, width)
        raise IngestError(f"{path}: non-finite values present")
    _check_unique_ids(path, ids, skip)
    return FeatureMatrix(ids, data)


def write_features(path, features, header=False):
    """Write a FeatureMatrix in the feature-file format.

    Floats are written with repr (shortest round-trip form), so a
    load/write/load cycle is bit-exact.
    """
    with open(path, "w", newline="") as fh:
        if header:
            fh.write("galaxy_id," + ",".join(f"f{i}" for i in range(features.d)) + "\n")
        for g, row in zip(features.galaxy_ids, features.data):
            fh.write(g + "," + ",".join(repr(float(v)) for v in row) + "\n")


# ---------------------------------------------------------------------------
# vote files


def _vote_width(schema):
    return 2 + sum(1 + q.option_count for q in schema.questions)


def load_votes(path, schema):
    """Load a vote CSV (column layout fixed by the schema) into a VoteTable."""
    path = Path(path)
    width = _vote_width(schema)
    has_header, found = _sniff_header(path)
    if found != width:
        raise IngestError(
            f"{path}: row 1 has {found} columns, schema requires {width}"
        )
    skip = 1 if has_header else 0
    try:
        df = pd.read_csv(path, header=None, skiprows=skip, dtype={0: str},
                         keep_default_na=False, engine="c", float_precision="round_trip")
    except Exception:
        _scan_rows(path, skip, width)
        raise IngestError(f"{path}: failed to parse") from None
    if df.shape[0] == 0:
        raise IngestError(f"{path}: no data rows")
    if df.shape[1] != width:
        _scan_rows(path, skip, width)
        raise IngestError(f"{path}: column count {df.shape[1]} does not match schema ({width})")
    ids = [str(g) for g in df.iloc[:, 0]]
    _check_unique_ids(path, ids, skip)
    try:
        block = df.iloc[:, 1:].to_numpy(dtype=np.float64)
    except (TypeError, ValueError):
        _scan_rows(path, skip, width)
        raise IngestError(f"{path}: failed to parse") from None
    if not np.isfinite(block).all():
        _scan_rows(path, skip, width)
        raise IngestError(f"{path}: non-finite values present")

    def _as_counts(col, what):
        if (np.mod(col, 1.0) != 0).any():
            i = int(np.flatnonzero(np.mod(col, 1.0) != 0)[0])
            raise IngestError(f"{path}: row {i + skip + 1} has non-integer {what}")
        return col.astype(np.int64)

    totals = _as_counts(block[:, 0], "total_classifications")
    answered = {}
    fractions = {}
    col = 1
    for q in schema.questions:
        answered[q.name] = _as_counts(block[:, col], f"answered_count for {q.name!r}")
        fractions[q.name] = block[:, col + 1:col + 1 + q.option_count]
        col += 1 + q.option_count
    try:
        return VoteTable(ids, totals, answered, fractions, schema)
    except ValueError as exc:
        raise IngestError(f"{path}: {exc}") from None


def write_votes(path, votes, header=False):
    """Write a VoteTable in the vote-file format."""
    schema = votes.schema
    with open(path, "w", newline="") as fh:
        if header:
            cols = ["galaxy_id", "total_classifications"]
            for q in schema.questions:
                cols.append(f"{q.name}:answered")
                cols.extend(f"{q.name}:{o}" for o in q.options)
            fh.write(",".join(cols) + "\n")
        for i, g in enumerate(votes.galaxy_ids):
            parts = [g, str(int(votes.total_classifications[i]))]
            for q in schema.questions:
                parts.append(str(int(votes.answered[q.name][i])))
                parts.extend(repr(float(v)) for v in votes.fractions[q.name][i])
            fh.write(",".join(parts) + "\n")


# ---------------------------------------------------------------------------
# operations


def filter_min_classifications(votes, min_count):
    """Keep galaxies with at least ``min_count`` volunteer classifications."""
    if min_count < 0:
        raise ValueError("min_count must be >= 0")
    return votes.subset(votes.total_classifications >= min_count)


def split(ids, test_fraction, seed):
    """Seeded random train/test split of an id list.

    The test set gets ``ceil(n * test_fraction)`` ids, the rest train.
    """
    if not 0 < test_fraction < 1:
        raise ValueError("test_fraction must be in (0, 1)")
    n = len(ids)
    if n == 0:
        raise ValueError("cannot split an empty id list")
    rng = np.random.default_rng(seed)
    perm = rng.permutation(n)
    n_test = int(math.ceil(n * test_fraction))
    test = [ids[i] for i in perm[:n_test]]
    train = [ids[i] for i in perm[n_test:]]
    return train, test


def discretize(votes, schema):
    """One-hot the top vote fraction per question into a hard class label.

    Ties go to the lowest option index; questions nobody answered get
    ``ABSENT``.
    """
    if [q.name for q in votes.schema.questions] != [q.name for q in schema.questions] or any(
        a.option_count != b.option_count
        for a, b in zip(votes.schema.questions, schema.questions)
    ):
        raise ValueError("vote table does not conform to the given schema")
    labels = {}
    for q in schema.questions:
        winner = np.argmax(votes.fractions[q.name], axis=1).astype(np.int64)
        labels[q.name] = np.where(votes.answered[q.name] > 0, winner, ABSENT)
    return HardLabelTable(list(votes.galaxy_ids), labels, schema)


def eligible_galaxies(votes, question, threshold):
    """Ids whose answer rate for ``question`` is at least ``threshold``.

    The rate is answered_count over total_classifications; galaxies shown
    to no volunteers are always excluded.
    """
    if not 0 <= threshold <= 1:
        raise ValueError("threshold must be in [0, 1]")
    votes.schema.question(question)  # raises KeyError for unknown names
    totals = votes.total_classifications
    answered = votes.answered[question]
    rate = np.zeros(votes.n, dtype=np.float64)
    np.divide(answered, totals, out=rate, where=totals > 0)
    mask = (totals > 0) & (rate >= threshold)
    return [g for g, keep in zip(votes.galaxy_ids, mask) if keep]

"""Tabular numeric datasets: CSV ingestion, quartile statistics, seeded splits.

A :class:`Dataset` is an immutable column-major table of float64 features with
an optional target column.  Ingestion drops non-numeric columns and rows with
missing values, each with a counted :class:`DataWarning`, so every stored
feature value is a finite real.
"""

from __future__ import annotations

import csv
import math
import warnings
from dataclasses import InitVar, dataclass
from pathlib import Path

import numpy as np

TASK_CLASSIFICATION = "classification"
TASK_REGRESSION = "regression"
TASK_UNLABELED = "unlabeled"
TASK_KINDS = (TASK_CLASSIFICATION, TASK_REGRESSION, TASK_UNLABELED)

# Cell values treated as missing (row is dropped) rather than as evidence that
# the whole column is non-numeric.  Values that parse to inf/nan count as
# missing too.
_NA_TOKENS = frozenset({"", "na", "n/a", "nan", "null", "none", "?"})


class DataError(Exception):
    """Unusable input data: bad files, bad columns, bad splits."""


class TargetKindError(DataError):
    """Target column cannot serve the requested task kind."""


class DataWarning(UserWarning):
    """Non-fatal data issues: dropped columns, dropped rows, odd strata."""


@dataclass(frozen=True)
class Dataset:
    """Immutable table of float64 feature columns plus an optional target.

    ``X`` holds one row per sample and one column per entry of
    ``feature_names``.  Classification targets are trimmed text labels
    (object array), regression targets are float64.  All arrays are marked
    read-only, so a Dataset can be shared between threads freely.
    """

    feature_names: tuple[str, ...]
    X: np.ndarray
    target: np.ndarray | None = None
    target_name: str | None = None
    task_kind: str = TASK_UNLABELED
    check_finite: InitVar[bool] = True

    def __post_init__(self, check_finite: bool) -> None:
        object.__setattr__(self, "feature_names", tuple(self.feature_names))
        X = np.ascontiguousarray(self.X, dtype=np.float64)
        if X.ndim != 2:
            raise DataError(f"feature matrix must be 2-d, got shape {X.shape}")
        n, nf = X.shape
        if n < 1:
            raise DataError("a dataset needs at least one row")
        if nf != len(self.feature_names):
            raise DataError(
                f"{len(self.feature_names)} feature names for {nf} columns"
            )
        if nf < 1:
            raise DataError("a dataset needs at least one feature column")
        if len(set(self.feature_names)) != nf:
            raise DataError("feature names must be unique")
        if check_finite and not np.isfinite(X).all():
            raise DataError("feature values must be finite")
        if self.task_kind not in TASK_KINDS:
            raise DataError(f"unknown task kind {self.task_kind!r}")
        X.setflags(write=False)
        object.__setattr__(self, "X", X)

        if self.target is None:
            if self.task_kind != TASK_UNLABELED:
                raise DataError(f"task {self.task_kind!r} requires a target")
            return
        if self.task_kind == TASK_UNLABELED:
            raise DataError("a target was given but task_kind is 'unlabeled'")
        if self.task_kind == TASK_REGRESSION:
            t = np.ascontiguousarray(self.target, dtype=np.float64)
            if not np.isfinite(t).all():
                raise DataError("regression target values must be finite")
        else:
            t = np.array([str(v) for v in self.target], dtype=object)
        if t.shape != (n,):
            raise DataError(f"target length {t.shape} does not match n={n}")
        t.setflags(write=False)
        object.__setattr__(self, "target", t)

    @property
    def n(self) -> int:
        return self.X.shape[0]

    @property
    def nf(self) -> int:
        return self.X.shape[1]

    def column(self, name: str) -> np.ndarray:
        """Read-only view of one feature column."""
        try:
            j = self.feature_names.index(name)
        except ValueError:
            raise DataError(f"no feature named {name!r}") from None
        return self.X[:, j]

    def take_rows(self, rows: np.ndarray) -> "Dataset":
        """New Dataset restricted to the given row indices."""
        target = None if self.target is None else self.target[rows]
        return Dataset(
            feature_names=self.feature_names,
            X=self.X[rows],
            target=target,
            target_name=self.target_name,
            task_kind=self.task_kind,
        )


@dataclass(frozen=True)
class QuartileSummary:
    """First and third quartile of a value sequence."""

    q1: float
    q3: float

    def __post_init__(self) -> None:
        if not self.q1 <= self.q3:
            raise ValueError(f"q1={self.q1} exceeds q3={self.q3}")

    @property
    def iqr(self) -> float:
        return self.q3 - self.q1


@dataclass(frozen=True)
class SplitDataset:
    """Disjoint train/test partition of a labeled dataset."""

    train: Dataset
    test: Dataset
    seed: int
    fraction: float


def _interpolated(sorted_vals: np.ndarray, p: float) -> float:
    # order statistic at rank p*(n-1), linearly interpolated between the
    # two straddling values
    pos = p * (len(sorted_vals) - 1)
    lo = math.floor(pos)
    frac = pos - lo
    a = float(sorted_vals[lo])
    if frac == 0.0:
        return a
    b = float(sorted_vals[lo + 1])
    return a + frac * (b - a)


def quartiles(values) -> QuartileSummary:
    """Q1 and Q3 by sorting and linear interpolation at ranks 0.25(n-1), 0.75(n-1)."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 1:
        raise ValueError("quartiles expects a 1-d sequence")
    if arr.size == 0:
        raise ValueError("quartiles of an empty sequence")
    if not np.isfinite(arr).all():
        raise ValueError("quartiles requires finite values")
    s = np.sort(arr)
    return QuartileSummary(q1=_interpolated(s, 0.25), q3=_interpolated(s, 0.75))


def _parse_cell(cell: str):
    """(kind, value) where kind is 'num', 'missing' or 'bad'."""
    t = cell.strip()
    if t.lower() in _NA_TOKENS:
        return "missing", None
    try:
        v = float(t)
    except ValueError:
        return "bad", None
    if not math.isfinite(v):
        return "missing", None
    return "num", v


def load_csv(path, target_name: str | None = None, task_kind: str | None = None) -> Dataset:
    """Load a header-first CSV into a Dataset.

    Feature columns are the numeric-parseable columns other than the target;
    columns containing unparseable text are dropped with one warning each,
    and rows with missing values in retained columns are dropped with a single
    counted warning.  Classification targets are kept as trimmed text labels,
    regression targets must parse as finite reals.
    """
    if target_name is None:
        if task_kind not in (None, TASK_UNLABELED):
            raise DataError(f"task {task_kind!r} requires target_name")
        task_kind = TASK_UNLABELED
    else:
        if task_kind not in (TASK_CLASSIFICATION, TASK_REGRESSION):
            raise DataError(
                "task_kind must be 'classification' or 'regression' when a target is named"
            )

    path = Path(path)
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.reader(fh)
            rows = list(reader)
    except OSError as e:
        raise DataError(f"cannot read {path}: {e}") from e
    if not rows:
        raise DataError(f"{path} is empty (a header row is required)")

    header = [h.strip() for h in rows[0]]
    body = rows[1:]
    if len(set(header)) != len(header):
        raise DataError("duplicate column names in header")
    if target_name is not None and target_name not in header:
        raise DataError(f"target column {target_name!r} not found in header")
    target_j = header.index(target_name) if target_name is not None else None

    ncols = len(header)
    for i, row in enumerate(body):
        if len(row) != ncols:
            raise DataError(f"row {i + 2} has {len(row)} cells, expected {ncols}")

    # classify feature columns: numeric unless any cell is unparseable text
    cells: list[list] = [[] for _ in range(ncols)]
    col_bad = [False] * ncols
    col_has_num = [False] * ncols
    for row in body:
        for j, cell in enumerate(row):
            if j == target_j:
                cells[j].append(cell.strip())
                continue
            kind, v = _parse_cell(cell)
            if kind == "bad":
                col_bad[j] = True
            elif kind == "num":
                col_has_num[j] = True
            cells[j].append(v)

    kept_cols = [
        j for j in range(ncols)
        if j != target_j and not col_bad[j] and col_has_num[j]
    ]
    dropped_cols = [j for j in range(ncols) if j != target_j and j not in kept_cols]
    for j in dropped_cols:
        warnings.warn(DataWarning(f"dropped non-numeric column {header[j]!r}"))
    if not kept_cols:
        raise DataError("empty dataset after cleaning: no numeric feature columns")

    # parse target labels/values; None marks a row to drop
    target_vals: list | None = None
    if target_j is not None:
        raw = cells[target_j]
        if task_kind == TASK_CLASSIFICATION:
            target_vals = [
                None if v.lower() in _NA_TOKENS else v for v in raw
            ]
        else:
            target_vals = []
            any_numeric = False
            for v in raw:
                kind, num = _parse_cell(v)
                target_vals.append(num if kind == "num" else None)
                if kind == "num":
                    any_numeric = True
            if not any_numeric:
                raise TargetKindError(
                    f"regression target {target_name!r} is not numeric"
                )

    keep_rows = []
    for i in range(len(body)):
        if any(cells[j][i] is None for j in kept_cols):
            continue
        if target_vals is not None and target_vals[i] is None:
            continue
        keep_rows.append(i)
    dropped_rows = len(body) - len(keep_rows)
    if dropped_rows:
        warnings.warn(DataWarning(
            f"dropped {dropped_rows} of {len(body)} rows with missing values"
        ))
    if not keep_rows:
        raise DataError("empty dataset after cleaning: no complete rows")

    X = np.array(
        [[cells[j][i] for j in kept_cols] for i in keep_rows], dtype=np.float64
    )
    target = None
    if target_vals is not None:
        target = [target_vals[i] for i in keep_rows]
    return Dataset(
        feature_names=tuple(header[j] for j in kept_cols),
        X=X,
        target=target,
        target_name=target_name,
        task_kind=task_kind,
    )


def save_csv(d: Dataset, path) -> None:
    """Write a Dataset back to CSV; float cells use shortest round-trip repr."""
    path = Path(path)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        header = list(d.feature_names)
        if d.target is not None:
            header.append(d.target_name or "target")
        writer.writerow(header)
        for i in range(d.n):
            row = [repr(float(v)) for v in d.X[i]]
            if d.target is not None:
                t = d.target[i]
                row.append(repr(float(t)) if d.task_kind == TASK_REGRESSION else str(t))
            writer.writerow(row)


def train_test_split(d: Dataset, fraction: float, seed: int) -> SplitDataset:
    """Deterministic seeded split; stratified by class for classification.

    Each class with at least two members contributes ``round(n_c * fraction)``
    rows to the test side (but always keeps one row in train); single-member
    classes go to train with a warning.  Row order within each side follows
    the original dataset.
    """
    if not 0.0 < fraction < 1.0:
        raise DataError(f"fraction must lie in (0, 1), got {fraction}")
    if seed < 0:
        raise DataError("seed must be a non-negative integer")
    if d.target is None:
        raise DataError("train_test_split requires a labeled dataset")

    rng = np.random.default_rng(seed)
    n = d.n
    if d.task_kind == TASK_CLASSIFICATION:
        test_idx: list[int] = []
        singletons: list[str] = []
        for cls in sorted({str(v) for v in d.target}):
            idx = np.nonzero(d.target == cls)[0]
            if idx.size == 1:
                singletons.append(cls)
                continue
            perm = rng.permutation(idx)
            k = int(idx.size * fraction + 0.5)  # half-up
            k = min(k, idx.size - 1)
            test_idx.extend(int(i) for i in perm[:k])
        if singletons:
            warnings.warn(DataWarning(
                f"single-member classes kept in train: {', '.join(singletons)}"
            ))
        test_rows = np.array(sorted(test_idx), dtype=np.intp)
    else:
        perm = rng.permutation(n)
        k = int(n * fraction + 0.5)
        test_rows = np.sort(perm[:k])

    mask = np.zeros(n, dtype=bool)
    mask[test_rows] = True
    train_rows = np.nonzero(~mask)[0]
    if test_rows.size == 0 or train_rows.size == 0:
        raise DataError(
            f"fraction {fraction} yields an empty split (n={n})"
        )
    return SplitDataset(
        train=d.take_rows(train_rows),
        test=d.take_rows(test_rows),
        seed=seed,
        fraction=fraction,
    )

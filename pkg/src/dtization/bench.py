"""Scaler-comparison benchmark: split, fit on train only, score on test.

For each requested scaler the protocol is: fit on the training split, apply
to both splits, train the task's model (KNN for classification, OLS for
regression) on the scaled training data and compute the metric suite on the
scaled test data.  Reports are deterministic for a fixed config; the only
volatile output line is the ``# generated=`` timestamp.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from ._version import __version__
from .dataset import (
    Dataset,
    TASK_CLASSIFICATION,
    TASK_REGRESSION,
    load_csv,
    train_test_split,
)
from .metrics import (
    CLASSIFICATION_METRICS,
    REGRESSION_METRICS,
    classification_metrics,
    confusion_matrix,
    regression_metrics,
)
from .models import KnnModel, knn_predict, ols_fit, ols_predict
from .scalers import METHODS, FittedScaler, fit, transform
from .tree import FACTOR_MODES, MODE_AS_PUBLISHED

FORMAT_TEXT = "text"
FORMAT_ROWS = "rows"
REPORT_FORMATS = (FORMAT_TEXT, FORMAT_ROWS)


class UsageError(Exception):
    """Caller error: bad flags, inconsistent task kind, impossible config."""


@dataclass(frozen=True)
class BenchConfig:
    """Everything a benchmark run depends on; the report echoes it back."""

    data_path: str
    target: str
    task_kind: str
    scalers: tuple[str, ...] = METHODS
    mode: str = MODE_AS_PUBLISHED
    k: int = 3
    test_fraction: float = 0.2
    seed: int = 42
    out: str | None = None
    fmt: str = FORMAT_TEXT

    def __post_init__(self) -> None:
        object.__setattr__(self, "scalers", tuple(self.scalers))
        if self.task_kind not in (TASK_CLASSIFICATION, TASK_REGRESSION):
            raise UsageError(f"task must be classification or regression, got {self.task_kind!r}")
        if not self.scalers:
            raise UsageError("at least one scaler is required")
        unknown = [s for s in self.scalers if s not in METHODS]
        if unknown:
            raise UsageError(f"unknown scaler(s) {unknown}; valid methods: {', '.join(METHODS)}")
        if self.mode not in FACTOR_MODES:
            raise UsageError(f"unknown factor mode {self.mode!r}")
        if self.k < 1:
            raise UsageError(f"k must be >= 1, got {self.k}")
        if not 0.0 < self.test_fraction < 1.0:
            raise UsageError(f"test fraction must lie in (0, 1), got {self.test_fraction}")
        if self.fmt not in REPORT_FORMATS:
            raise UsageError(f"unknown report format {self.fmt!r}")


@dataclass(frozen=True)
class MetricRow:
    dataset: str
    scaler: str
    model: str
    metric: str
    value: float


@dataclass
class BenchReport:
    config: BenchConfig
    dataset_label: str
    n_train: int
    n_test: int
    rows: list[MetricRow] = field(default_factory=list)
    failures: dict[str, str] = field(default_factory=dict)
    fitted: dict[str, FittedScaler] = field(default_factory=dict)
    version: str = __version__

    def values_for(self, scaler: str) -> dict[str, float]:
        return {r.metric: r.value for r in self.rows if r.scaler == scaler}


def _check_task_kind(d: Dataset, task_kind: str) -> None:
    # A continuous column mislabeled as a classification target shows up as an
    # implausible number of distinct classes.
    if task_kind == TASK_CLASSIFICATION:
        n_classes = len(set(str(v) for v in d.target))
        if n_classes > max(50, d.n // 4):
            raise UsageError(
                f"task-kind mismatch: target {d.target_name!r} has {n_classes} "
                f"distinct values over {d.n} rows; this looks like a regression target"
            )
        if n_classes < 2:
            raise UsageError(
                f"task-kind mismatch: target {d.target_name!r} has a single class"
            )


def _score_classification(cfg: BenchConfig, train: Dataset, test: Dataset) -> dict[str, float]:
    model = KnnModel(train_points=train.X, train_labels=train.target, k=cfg.k)
    pred = knn_predict(model, test.X)
    return classification_metrics(confusion_matrix(test.target, pred)).as_dict()


def _score_regression(cfg: BenchConfig, train: Dataset, test: Dataset) -> dict[str, float]:
    model = ols_fit(train.X, train.target)
    pred = ols_predict(model, test.X)
    return regression_metrics(test.target, pred).as_dict()


def run_bench(config: BenchConfig, dataset: Dataset | None = None) -> BenchReport:
    """Execute the benchmark; per-scaler failures are recorded, not raised."""
    if dataset is None:
        dataset = load_csv(config.data_path, config.target, config.task_kind)
    _check_task_kind(dataset, config.task_kind)
    split = train_test_split(dataset, config.test_fraction, config.seed)
    if config.task_kind == TASK_CLASSIFICATION and config.k > split.train.n:
        raise UsageError(
            f"k={config.k} exceeds the training split size {split.train.n}"
        )
    label = Path(config.data_path).name
    model_name = "knn" if config.task_kind == TASK_CLASSIFICATION else "ols"
    score = (
        _score_classification
        if config.task_kind == TASK_CLASSIFICATION
        else _score_regression
    )
    report = BenchReport(
        config=config, dataset_label=label, n_train=split.train.n, n_test=split.test.n
    )
    for method in config.scalers:
        try:
            scaler = fit(split.train, method, mode=config.mode)
            values = score(cfg=config, train=transform(scaler, split.train),
                           test=transform(scaler, split.test))
            bad = [m for m, v in values.items() if not math.isfinite(v)]
            if bad:
                raise ArithmeticError(f"non-finite metric(s): {', '.join(bad)}")
        except Exception as exc:
            report.failures[method] = f"{type(exc).__name__}: {exc}"
            continue
        report.fitted[method] = scaler
        report.rows.extend(
            MetricRow(dataset=label, scaler=method, model=model_name, metric=m, value=v)
            for m, v in values.items()
        )
    return report


def _header_lines(report: BenchReport, timestamp: str | None) -> list[str]:
    cfg = report.config
    when = timestamp if timestamp is not None else (
        datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
    )
    return [
        f"# dtization bench v{report.version}",
        f"# generated={when}",
        f"# dataset={report.dataset_label} task={cfg.task_kind} target={cfg.target}"
        f" n_train={report.n_train} n_test={report.n_test}",
        f"# seed={cfg.seed} test_fraction={cfg.test_fraction} mode={cfg.mode} k={cfg.k}",
        f"# scalers={','.join(cfg.scalers)}",
    ]


def _metric_names(report: BenchReport) -> tuple[str, ...]:
    if report.config.task_kind == TASK_CLASSIFICATION:
        return CLASSIFICATION_METRICS
    return REGRESSION_METRICS


def render_text(report: BenchReport, timestamp: str | None = None) -> str:
    """Fixed-precision results table (4 decimal places)."""
    metrics = _metric_names(report)
    lines = _header_lines(report, timestamp)
    lines.append("")
    head = f"{'scaler':<12}{'model':<8}" + "".join(f"{m:>12}" for m in metrics)
    lines.append(head)
    lines.append("-" * len(head))
    for method in report.config.scalers:
        if method in report.failures:
            continue
        values = report.values_for(method)
        model = next(r.model for r in report.rows if r.scaler == method)
        lines.append(
            f"{method:<12}{model:<8}"
            + "".join(f"{values[m]:>12.4f}" for m in metrics)
        )
    for method in report.config.scalers:
        if method in report.failures:
            lines.append(f"# failed scaler={method}: {report.failures[method]}")
    return "\n".join(lines) + "\n"


def render_rows(report: BenchReport, timestamp: str | None = None) -> str:
    """Machine-readable rows: dataset,scaler,model,metric,value (full precision)."""
    lines = _header_lines(report, timestamp)
    lines.append("dataset,scaler,model,metric,value")
    for r in report.rows:
        lines.append(f"{r.dataset},{r.scaler},{r.model},{r.metric},{r.value!r}")
    for method, msg in report.failures.items():
        lines.append(f"# failed scaler={method}: {msg}")
    return "\n".join(lines) + "\n"


def render(report: BenchReport, fmt: str | None = None, timestamp: str | None = None) -> str:
    fmt = report.config.fmt if fmt is None else fmt
    if fmt == FORMAT_TEXT:
        return render_text(report, timestamp)
    if fmt == FORMAT_ROWS:
        return render_rows(report, timestamp)
    raise UsageError(f"unknown report format {fmt!r}")


def report_body(text: str) -> str:
    """Report text minus its volatile timestamp line, for byte comparisons."""
    return "\n".join(
        line for line in text.splitlines() if not line.startswith("# generated=")
    )

"""Classification and regression metric suites for the benchmark reports.

Classification: accuracy, macro precision/recall/F1 and Matthews correlation
from a confusion matrix.  Regression: MAE, MSE, R².  All 0/0 cases resolve to
0 so degenerate folds still produce finite, comparable reports.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .dataset import DataWarning

CLASSIFICATION_METRICS = ("accuracy", "precision", "recall", "f1", "mcc")
REGRESSION_METRICS = ("mae", "mse", "r2")


@dataclass(frozen=True)
class ConfusionMatrix:
    """K x K count matrix; rows are actual classes, columns predicted."""

    classes: tuple[str, ...]
    counts: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "classes", tuple(self.classes))
        c = np.ascontiguousarray(self.counts, dtype=np.int64)
        k = len(self.classes)
        if k == 0:
            raise ValueError("confusion matrix needs at least one class")
        if c.shape != (k, k):
            raise ValueError(f"counts shape {c.shape} does not match {k} classes")
        if (c < 0).any():
            raise ValueError("confusion matrix counts must be non-negative")
        if int(c.sum()) < 1:
            raise ValueError("confusion matrix must count at least one sample")
        c.setflags(write=False)
        object.__setattr__(self, "counts", c)

    @property
    def total(self) -> int:
        return int(self.counts.sum())


@dataclass(frozen=True)
class ClassificationReport:
    accuracy: float
    precision: float
    recall: float
    f1: float
    mcc: float

    def as_dict(self) -> dict[str, float]:
        return {m: getattr(self, m) for m in CLASSIFICATION_METRICS}


@dataclass(frozen=True)
class RegressionReport:
    mae: float
    mse: float
    r2: float

    def as_dict(self) -> dict[str, float]:
        return {m: getattr(self, m) for m in REGRESSION_METRICS}


def confusion_matrix(y_true, y_pred) -> ConfusionMatrix:
    """Tally predictions against truth; classes are the sorted label union."""
    t = [str(v) for v in y_true]
    p = [str(v) for v in y_pred]
    if len(t) != len(p):
        raise ValueError(f"length mismatch: {len(t)} true vs {len(p)} predicted")
    if not t:
        raise ValueError("cannot build a confusion matrix from no samples")
    classes = tuple(sorted(set(t) | set(p)))
    index = {c: i for i, c in enumerate(classes)}
    counts = np.zeros((len(classes), len(classes)), dtype=np.int64)
    for a, b in zip(t, p):
        counts[index[a], index[b]] += 1
    return ConfusionMatrix(classes=classes, counts=counts)


def _binary_mcc(tp: int, tn: int, fp: int, fn: int) -> float:
    num = tp * tn - fp * fn
    den2 = (tp + fp) * (tp + fn) * (tn + fp) * (tn + fn)
    if den2 == 0:
        return 0.0
    return num / math.sqrt(den2)


def _multiclass_mcc(counts: np.ndarray) -> float:
    # Covariance (R_K) form; all terms are exact integers before the final
    # division, so K=2 agrees with the binary formula to float precision.
    c = int(np.trace(counts))
    s = int(counts.sum())
    t = counts.sum(axis=1)  # actual per class
    p = counts.sum(axis=0)  # predicted per class
    num = c * s - int(t @ p)
    den2 = (s * s - int(p @ p)) * (s * s - int(t @ t))
    if den2 <= 0:
        return 0.0
    return num / math.sqrt(den2)


def classification_metrics(cm: ConfusionMatrix) -> ClassificationReport:
    """Accuracy, macro precision/recall/F1 and MCC from a confusion matrix.

    Per-class precision/recall are one-vs-rest with 0/0 -> 0; F1 per class is
    0 when precision + recall is 0; macro averaging weights classes equally.
    MCC uses the binary formula for two classes and its covariance
    generalization otherwise, with a zero denominator mapping to 0.
    """
    counts = cm.counts
    k = len(cm.classes)
    total = cm.total
    accuracy = int(np.trace(counts)) / total

    precisions, recalls, f1s = [], [], []
    for i in range(k):
        tp = int(counts[i, i])
        fp = int(counts[:, i].sum()) - tp
        fn = int(counts[i, :].sum()) - tp
        prec = tp / (tp + fp) if tp + fp > 0 else 0.0
        rec = tp / (tp + fn) if tp + fn > 0 else 0.0
        f1 = 2.0 * prec * rec / (prec + rec) if prec + rec > 0.0 else 0.0
        precisions.append(prec)
        recalls.append(rec)
        f1s.append(min(1.0, f1))

    if k == 2:
        # one-vs-rest around classes[1]; the binary MCC is symmetric in the
        # choice of positive class
        tp = int(counts[1, 1])
        tn = int(counts[0, 0])
        fp = int(counts[0, 1])
        fn = int(counts[1, 0])
        mcc = _binary_mcc(tp, tn, fp, fn)
    else:
        mcc = _multiclass_mcc(counts)

    # fsum keeps macro means exactly <= 1; mcc is clamped because the exact
    # integer num/den pair can round a hair past the Cauchy-Schwarz bound
    return ClassificationReport(
        accuracy=accuracy,
        precision=math.fsum(precisions) / k,
        recall=math.fsum(recalls) / k,
        f1=math.fsum(f1s) / k,
        mcc=max(-1.0, min(1.0, mcc)),
    )


def regression_metrics(y_true, y_pred) -> RegressionReport:
    """MAE, MSE and R² of predictions against truth.

    R² uses total variance around mean(y_true); zero total variance falls
    back to 0 with a warning so constant-target folds stay comparable.
    """
    t = np.asarray(y_true, dtype=np.float64)
    p = np.asarray(y_pred, dtype=np.float64)
    if t.shape != p.shape or t.ndim != 1:
        raise ValueError(f"shape mismatch: {t.shape} true vs {p.shape} predicted")
    if t.size == 0:
        raise ValueError("regression metrics need at least one sample")
    n = t.size
    diff = t - p
    ss_res = math.fsum((diff * diff).tolist())
    mae = math.fsum(np.abs(diff).tolist()) / n
    mse = ss_res / n
    mean = math.fsum(t.tolist()) / n
    ss_tot = math.fsum(((t - mean) ** 2).tolist())
    if ss_tot == 0.0:
        warnings.warn(
            DataWarning("zero target variance; reporting r2 = 0"), stacklevel=2
        )
        r2 = 0.0
    else:
        r2 = 1.0 - ss_res / ss_tot
    return RegressionReport(mae=mae, mse=mse, r2=r2)

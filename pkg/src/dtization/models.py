"""The two benchmark learners: KNN (default k=3) and ordinary least squares.

Both are deliberately plain reference implementations; the benchmark cares
about determinism, not speed.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .dataset import DataWarning

_QUERY_CHUNK = 256


@dataclass(frozen=True)
class KnnModel:
    """Memorized training set plus the neighbor count k."""

    train_points: np.ndarray
    train_labels: np.ndarray
    k: int = 3

    def __post_init__(self) -> None:
        pts = np.ascontiguousarray(self.train_points, dtype=np.float64)
        labs = np.array([str(v) for v in self.train_labels], dtype=object)
        if pts.ndim != 2 or pts.shape[0] < 1:
            raise ValueError(f"training matrix must be non-empty 2-d, got {pts.shape}")
        if labs.shape != (pts.shape[0],):
            raise ValueError("one label per training row is required")
        if not 1 <= self.k <= pts.shape[0]:
            raise ValueError(f"k={self.k} must lie in [1, {pts.shape[0]}]")
        pts.setflags(write=False)
        labs.setflags(write=False)
        object.__setattr__(self, "train_points", pts)
        object.__setattr__(self, "train_labels", labs)


def knn_predict(m: KnnModel, query_points) -> list[str]:
    """Majority vote among the k nearest training points per query.

    Neighbors are the k smallest by (Euclidean distance, training-row index);
    a vote tie goes to the tied class with the smallest mean distance, then
    to the lexicographically smallest label.
    """
    q = np.ascontiguousarray(query_points, dtype=np.float64)
    if q.ndim != 2 or q.shape[1] != m.train_points.shape[1]:
        raise ValueError(
            f"query shape {q.shape} does not match training dimension "
            f"{m.train_points.shape[1]}"
        )
    out: list[str] = []
    for start in range(0, q.shape[0], _QUERY_CHUNK):
        chunk = q[start : start + _QUERY_CHUNK]
        # squared distances order identically to Euclidean ones
        d2 = ((chunk[:, None, :] - m.train_points[None, :, :]) ** 2).sum(axis=2)
        # stable sort realizes the (distance, training-row index) ordering
        nearest = np.argsort(d2, axis=1, kind="stable")[:, : m.k]
        for row, idx in enumerate(nearest):
            labs = m.train_labels[idx]
            dist = np.sqrt(d2[row, idx])
            votes: dict[str, int] = {}
            for lab in labs:
                votes[lab] = votes.get(lab, 0) + 1
            top = max(votes.values())
            tied = [lab for lab, c in votes.items() if c == top]
            if len(tied) == 1:
                out.append(tied[0])
                continue
            out.append(
                min(
                    tied,
                    key=lambda lab: (
                        math.fsum(dist[labs == lab].tolist()) / votes[lab],
                        lab,
                    ),
                )
            )
    return out


@dataclass(frozen=True)
class OlsModel:
    """Linear model y = X @ coefficients + intercept."""

    coefficients: np.ndarray
    intercept: float

    def __post_init__(self) -> None:
        beta = np.ascontiguousarray(self.coefficients, dtype=np.float64)
        if beta.ndim != 1:
            raise ValueError("coefficients must be a 1-d vector")
        if not (np.isfinite(beta).all() and math.isfinite(self.intercept)):
            raise ValueError("model parameters must be finite")
        beta.setflags(write=False)
        object.__setattr__(self, "coefficients", beta)


def ols_fit(X, y) -> OlsModel:
    """Least-squares fit of y on X with an intercept.

    Features and target are centered and the slope solved by an orthogonal
    factorization (lstsq); the intercept is recovered from the means, which
    keeps intercept-only fits at exactly mean(y).  Rank-deficient systems get
    the minimum-norm solution and a warning.
    """
    Xa = np.ascontiguousarray(X, dtype=np.float64)
    ya = np.ascontiguousarray(y, dtype=np.float64)
    if Xa.ndim != 2 or Xa.shape[0] < 1:
        raise ValueError(f"X must be a non-empty 2-d matrix, got shape {Xa.shape}")
    if ya.shape != (Xa.shape[0],):
        raise ValueError("y must have one value per row of X")
    if not (np.isfinite(Xa).all() and np.isfinite(ya).all()):
        raise ValueError("ols_fit requires finite values")
    x_mean = Xa.mean(axis=0)
    y_mean = float(ya.mean())
    beta, _, rank, _ = np.linalg.lstsq(Xa - x_mean, ya - y_mean, rcond=None)
    if rank < Xa.shape[1]:
        warnings.warn(
            DataWarning(
                f"rank-deficient design (rank {rank} < {Xa.shape[1]} features); "
                "using the minimum-norm solution"
            ),
            stacklevel=2,
        )
    return OlsModel(coefficients=beta, intercept=y_mean - float(x_mean @ beta))


def ols_predict(m: OlsModel, X) -> np.ndarray:
    """X @ coefficients + intercept."""
    Xa = np.ascontiguousarray(X, dtype=np.float64)
    if Xa.ndim != 2 or Xa.shape[1] != m.coefficients.shape[0]:
        raise ValueError(
            f"X shape {Xa.shape} does not match {m.coefficients.shape[0]} coefficients"
        )
    return Xa @ m.coefficients + m.intercept

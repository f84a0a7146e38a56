"""Decision-tree feature ranking and the per-feature scaling-factor table.

An unpruned CART-style tree is grown on the training data; the depth at which
each feature is first chosen as a split determines its scaling factor.  The
tree is never used for prediction, only for ranking.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .dataset import (
    DataError,
    Dataset,
    TASK_CLASSIFICATION,
    TASK_REGRESSION,
)

MODE_AS_PUBLISHED = "as-published"
MODE_DESCENDING = "descending"
FACTOR_MODES = (MODE_AS_PUBLISHED, MODE_DESCENDING)

# Candidates whose vectorised float score lands within this relative window of
# the per-feature optimum are re-compared exactly (rationals for gini, a
# canonical two-pass variance for regression), so argmin selection and its
# (feature index, threshold) tie-break are immune to float rounding.
_GINI_WINDOW = 64 * np.finfo(np.float64).eps
_VAR_WINDOW = 1e-9
_MAX_WINDOW = 256

SplitHook = Callable[[int, str, tuple[str, ...]], None]


def exponent(nf: int) -> float:
    """Rate constant ln(2)/nf; the depth-exponential reaches 2 at depth nf."""
    if nf < 1:
        raise ValueError(f"nf must be a positive integer, got {nf}")
    return math.log(2.0) / nf


def gini_impurity(labels) -> float:
    """Gini impurity 1 - sum(p_k^2) of a label sequence.

    Evaluated as ``1 - (sum of squared class counts) / n**2``: exact integer
    arithmetic up to a single division, so the result does not depend on the
    order classes are tallied in.
    """
    n = len(labels)
    if n == 0:
        raise ValueError("gini_impurity of an empty sequence")
    ss = sum(c * c for c in Counter(labels).values())
    return 1.0 - ss / (n * n)


def regression_impurity(targets) -> float:
    """Population variance of a target sequence (CART regression criterion)."""
    arr = np.asarray(targets, dtype=np.float64)
    if arr.size == 0:
        raise ValueError("regression_impurity of an empty sequence")
    m = arr.mean()
    return float(((arr - m) ** 2).mean())


@dataclass(frozen=True)
class SplitChoice:
    """A chosen split: feature, threshold, and the impurity decrease it buys."""

    feature: str
    split_point: float
    impurity_decrease: float


@dataclass(frozen=True)
class ScalingFactorTable:
    """Per-feature scaling factors derived from first split depth.

    ``first_depth`` maps only the features the tree ever chose; everything
    else has factor exactly 1.  In as-published mode factors are 2**(d/nf),
    growing from just above 1 at the root to exactly 2 at depth nf; in
    descending mode they are 2**(-(d-1)/nf), shrinking from exactly 1 at the
    root towards (but never reaching) 0.5.
    """

    exponent_x: float
    nf_total: int
    mode: str
    factors: dict[str, float]
    first_depth: dict[str, int]

    def __post_init__(self) -> None:
        if self.mode not in FACTOR_MODES:
            raise ValueError(f"unknown factor mode {self.mode!r}")

    def depth_of(self, name: str) -> int | None:
        return self.first_depth.get(name)


def _candidate_splits(col_sorted: np.ndarray):
    """Boundary positions between distinct consecutive sorted values and their
    midpoint thresholds; midpoints that collapse onto a neighbour (adjacent
    floats) are discarded because they would not separate the rows scored."""
    bnd = np.nonzero(col_sorted[1:] != col_sorted[:-1])[0]
    if bnd.size == 0:
        return bnd, col_sorted[:0]
    lo = col_sorted[bnd]
    hi = col_sorted[bnd + 1]
    thr = (lo + hi) / 2.0
    ok = (thr > lo) & (thr <= hi)
    return bnd[ok], thr[ok]


def _best_classification(X, rows, feats, codes, n_classes):
    """Exact best (feature, threshold) under weighted-gini scoring.

    Minimising the weighted child gini is equivalent to maximising
    T = ssq_left/n_left + ssq_right/n_right where ssq is the sum of squared
    class counts; T is a small rational, so near-optimal candidates are
    compared as exact fractions.  Ties keep the lowest feature index, then
    the smallest threshold.
    """
    n = rows.size
    y = codes[rows]
    best = None  # (feat, float(threshold), Fraction T)
    for f in feats:
        col = X[rows, f]
        order = np.argsort(col, kind="stable")
        s = col[order]
        bnd, thr = _candidate_splits(s)
        if bnd.size == 0:
            continue
        onehot = np.zeros((n, n_classes), dtype=np.int64)
        onehot[np.arange(n), y[order]] = 1
        cum = onehot.cumsum(axis=0)
        cl = cum[bnd]
        cr = cum[-1] - cl
        n_l = bnd + 1
        n_r = n - n_l
        s_l = np.einsum("ij,ij->i", cl, cl)
        s_r = np.einsum("ij,ij->i", cr, cr)
        t_float = s_l / n_l + s_r / n_r
        top = float(t_float.max())
        window = np.nonzero(t_float >= top - _GINI_WINDOW * max(1.0, abs(top)))[0]
        for i in window[:_MAX_WINDOW]:
            t_exact = Fraction(int(s_l[i]), int(n_l[i])) + Fraction(int(s_r[i]), int(n_r[i]))
            if best is None or t_exact > best[2]:
                best = (f, float(thr[i]), t_exact)
    return None if best is None else (best[0], best[1])


def _exact_child_sse(values) -> Fraction:
    """n * variance of a float sequence as an exact rational."""
    vals = [Fraction(float(v)) for v in values]
    n = len(vals)
    total = sum(vals)
    return sum(v * v for v in vals) - total * total / n


def _best_regression(X, rows, feats, y):
    """Exact best (feature, threshold) under weighted-variance scoring.

    A centred cumulative-sum sweep scores every candidate in one vectorised
    float pass; candidates within a small relative window of the optimum are
    re-compared as exact rationals (floats are exact rationals), so argmin
    selection and the (feature, threshold) tie-break are immune to rounding.
    Minimising weighted child variance equals minimising the summed child
    SSEs, which avoids the /n noise.
    """
    yv = y[rows]
    n = rows.size
    best = None  # (feat, float(threshold), Fraction summed-child-SSE)
    for f in feats:
        col = X[rows, f]
        order = np.argsort(col, kind="stable")
        s = col[order]
        bnd, thr = _candidate_splits(s)
        if bnd.size == 0:
            continue
        yc = yv[order] - yv.mean()
        cs = yc.cumsum()
        cq = (yc * yc).cumsum()
        n_l = (bnd + 1).astype(np.float64)
        n_r = n - n_l
        sse = (cq[bnd] - cs[bnd] ** 2 / n_l) + (cq[-1] - cq[bnd] - (cs[-1] - cs[bnd]) ** 2 / n_r)
        floor_ = float(sse.min())
        scale = max(abs(floor_), float(cq[-1]), 1e-300)
        window = np.nonzero(sse <= floor_ + _VAR_WINDOW * scale)[0]
        for i in window[:_MAX_WINDOW]:
            t = float(thr[i])
            left = X[rows, f] < t
            exact = _exact_child_sse(yv[left]) + _exact_child_sse(yv[~left])
            if best is None or exact < best[2]:
                best = (f, t, exact)
    return None if best is None else (best[0], best[1])


def _node_is_pure(kind, codes, y, rows) -> bool:
    if kind == TASK_CLASSIFICATION:
        c = codes[rows]
        return bool(np.all(c == c[0]))
    t = y[rows]
    return bool(np.all(t == t[0]))


def _split_node(X, rows, feats, kind, codes, y, n_classes):
    """(feature index, threshold, impurity decrease) or None.

    The reported decrease is always the canonical composition
    parent_impurity - (n_l/n * child_l + n_r/n * child_r) over the public
    impurity functions, with children taken in original row order.
    """
    if kind == TASK_CLASSIFICATION:
        hit = _best_classification(X, rows, feats, codes, n_classes)
    else:
        hit = _best_regression(X, rows, feats, y)
    if hit is None:
        return None
    f, thr = hit
    n = rows.size
    left = X[rows, f] < thr
    n_l = int(np.count_nonzero(left))
    if kind == TASK_CLASSIFICATION:
        yv = codes[rows]
        parent = gini_impurity(yv)
        weighted = n_l / n * gini_impurity(yv[left]) + (n - n_l) / n * gini_impurity(yv[~left])
    else:
        yv = y[rows]
        parent = regression_impurity(yv)
        weighted = n_l / n * regression_impurity(yv[left]) + (n - n_l) / n * regression_impurity(yv[~left])
    return f, thr, parent - weighted


def _prepare_target(d: Dataset):
    """(kind, codes, y, n_classes) arrays for the internal split machinery."""
    if d.target is None:
        raise DataError("a labeled dataset is required")
    if d.task_kind == TASK_CLASSIFICATION:
        _, codes = np.unique(d.target, return_inverse=True)
        codes = codes.astype(np.int64)
        return TASK_CLASSIFICATION, codes, None, int(codes.max()) + 1
    if d.task_kind == TASK_REGRESSION:
        return TASK_REGRESSION, None, np.asarray(d.target, dtype=np.float64), 0
    raise DataError("task kind must be classification or regression")


def best_split(node_data: Dataset) -> SplitChoice | None:
    """Best (feature, threshold) over all midpoint candidates, or None.

    Candidates are the midpoints between consecutive distinct sorted values of
    each feature, scored by weighted child impurity (gini for classification,
    variance for regression).  Returns None when the node is pure or no
    feature has two distinct values.
    """
    if node_data.n < 2:
        raise DataError("best_split needs at least 2 rows")
    kind, codes, y, n_classes = _prepare_target(node_data)
    rows = np.arange(node_data.n)
    if _node_is_pure(kind, codes, y, rows):
        return None
    got = _split_node(node_data.X, rows, list(range(node_data.nf)), kind, codes, y, n_classes)
    if got is None:
        return None
    f, thr, dec = got
    return SplitChoice(
        feature=node_data.feature_names[f],
        split_point=thr,
        impurity_decrease=dec,
    )


def calculate_sf(
    d: Dataset,
    x: float,
    mode: str = MODE_AS_PUBLISHED,
    on_split: SplitHook | None = None,
) -> ScalingFactorTable:
    """Grow the ranking tree and materialise the scaling-factor table.

    Depth-first recursion from depth 1: at every node the best split is
    chosen, the feature's depth is recorded if it is the shallowest seen for
    that feature, the feature's column is removed from both children, and
    recursion continues at depth+1.  Recursion stops when depth exceeds the
    total feature count, the node has fewer than 2 rows, the node target is
    pure (zero variance), or no valid split exists.

    ``on_split(depth, feature, ancestor_features)`` is invoked for every
    chosen split; useful for tracing.
    """
    if x <= 0.0:
        raise ValueError(f"exponent x must be positive, got {x}")
    nf = d.nf
    if not math.isclose(x, math.log(2.0) / nf, rel_tol=1e-9):
        raise ValueError(
            f"exponent x={x} does not match ln(2)/nf for nf={nf}"
        )
    if mode not in FACTOR_MODES:
        raise ValueError(f"unknown factor mode {mode!r}")
    kind, codes, y, n_classes = _prepare_target(d)

    X = d.X
    first_depth: dict[str, int] = {}

    def walk(rows: np.ndarray, feats: list[int], depth: int, path: tuple[str, ...]) -> None:
        if depth > nf or rows.size < 2 or not feats:
            return
        if _node_is_pure(kind, codes, y, rows):
            return
        got = _split_node(X, rows, feats, kind, codes, y, n_classes)
        if got is None:
            return
        f, thr, _ = got
        name = d.feature_names[f]
        prev = first_depth.get(name)
        if prev is None or depth < prev:
            first_depth[name] = depth
        if on_split is not None:
            on_split(depth, name, path)
        child_feats = [g for g in feats if g != f]
        mask = X[rows, f] < thr
        walk(rows[mask], child_feats, depth + 1, path + (name,))
        walk(rows[~mask], child_feats, depth + 1, path + (name,))

    walk(np.arange(d.n), list(range(nf)), 1, ())

    # 2**(d/nf) equals e**(x*d) for x = ln(2)/nf; the base-2 form lands the
    # boundary cases exactly on 2.0 (depth nf, as-published) and 1.0 (depth 1,
    # descending) in floating point.
    factors: dict[str, float] = {}
    for name in d.feature_names:
        dep = first_depth.get(name)
        if dep is None:
            factors[name] = 1.0
        elif mode == MODE_AS_PUBLISHED:
            factors[name] = math.pow(2.0, dep / nf)
        else:
            factors[name] = math.pow(2.0, -(dep - 1) / nf)
    return ScalingFactorTable(
        exponent_x=x,
        nf_total=nf,
        mode=mode,
        factors=factors,
        first_depth=first_depth,
    )

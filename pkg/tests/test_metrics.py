import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dtization import (
    ClassificationReport,
    ConfusionMatrix,
    DataWarning,
    classification_metrics,
    confusion_matrix,
    regression_metrics,
)

from _oracles import rk_mcc


def cm_from(counts, classes=None):
    counts = np.asarray(counts, dtype=np.int64)
    classes = classes or tuple(f"c{i}" for i in range(counts.shape[0]))
    return ConfusionMatrix(classes=classes, counts=counts)


# --------------------------------------------------------- confusion_matrix

def test_confusion_perfect_pair():
    cm = confusion_matrix(["a", "b"], ["a", "b"])
    assert cm.classes == ("a", "b")
    assert cm.counts.tolist() == [[1, 0], [0, 1]]


def test_confusion_total_miss():
    cm = confusion_matrix(["a", "a"], ["b", "b"])
    assert cm.counts[cm.classes.index("a"), cm.classes.index("b")] == 2


def test_confusion_hand_tally():
    cm = confusion_matrix(list("abbc"), list("abcc"))
    assert cm.classes == ("a", "b", "c")
    assert cm.counts.tolist() == [[1, 0, 0], [0, 1, 1], [0, 0, 1]]


def test_confusion_union_of_labels():
    cm = confusion_matrix(["a"], ["z"])
    assert cm.classes == ("a", "z")
    assert cm.total == 1


def test_confusion_errors():
    with pytest.raises(ValueError):
        confusion_matrix(["a"], ["a", "b"])
    with pytest.raises(ValueError):
        confusion_matrix([], [])


def test_confusion_matrix_validation():
    with pytest.raises(ValueError):
        cm_from([[1, 0]])  # not square
    with pytest.raises(ValueError):
        cm_from([[-1, 0], [0, 2]])
    with pytest.raises(ValueError):
        cm_from([[0, 0], [0, 0]])


# --------------------------------------------------- classification_metrics

def test_perfect_three_class_diagonal():
    rep = classification_metrics(cm_from(np.diag([3, 4, 5])))
    assert rep == ClassificationReport(1.0, 1.0, 1.0, 1.0, 1.0)


def test_binary_worked_example():
    # TP=1 TN=2 FP=1 FN=0 with the second class as positive
    cm = cm_from([[2, 1], [0, 1]], classes=("n", "p"))
    rep = classification_metrics(cm)
    assert abs(rep.accuracy - 0.75) <= 1e-12
    assert abs(rep.precision - 0.75) <= 1e-12
    assert abs(rep.recall - 5.0 / 6.0) <= 1e-12
    assert abs(rep.mcc - 2.0 / math.sqrt(12.0)) <= 1e-12


def test_all_one_class_predictions_give_zero_mcc():
    cm = confusion_matrix(list("aabb"), list("aaaa"))
    rep = classification_metrics(cm)
    assert rep.mcc == 0.0


def test_single_class_matrix():
    rep = classification_metrics(cm_from([[4]], classes=("only",)))
    assert rep.accuracy == 1.0
    assert rep.mcc == 0.0  # degenerate denominator


count_matrix = st.integers(min_value=2, max_value=4).flatmap(
    lambda k: st.lists(
        st.lists(st.integers(min_value=0, max_value=40), min_size=k, max_size=k),
        min_size=k,
        max_size=k,
    )
)


@settings(max_examples=200)
@given(count_matrix)
def test_metric_ranges_and_trace_identity(rows):
    counts = np.asarray(rows, dtype=np.int64)
    if counts.sum() == 0:
        counts[0, 0] = 1
    cm = cm_from(counts)
    rep = classification_metrics(cm)
    assert 0.0 <= rep.accuracy <= 1.0
    assert 0.0 <= rep.precision <= 1.0
    assert 0.0 <= rep.recall <= 1.0
    assert 0.0 <= rep.f1 <= 1.0
    assert -1.0 <= rep.mcc <= 1.0
    # accuracy equals summed per-class true positives over the total
    assert rep.accuracy == sum(int(counts[i, i]) for i in range(len(cm.classes))) / cm.total


@settings(max_examples=200)
@given(count_matrix, st.randoms())
def test_label_permutation_invariance(rows, rnd):
    counts = np.asarray(rows, dtype=np.int64)
    if counts.sum() == 0:
        counts[0, 0] = 1
    k = counts.shape[0]
    base = classification_metrics(cm_from(counts))
    perm = list(range(k))
    rnd.shuffle(perm)
    # permuting label names relabels rows and columns together; metrics are
    # aggregates over classes, so nothing may change
    permuted = counts[np.ix_(perm, perm)]
    names = tuple(f"c{perm[i]}" for i in range(k))
    other = classification_metrics(ConfusionMatrix(classes=names, counts=permuted))
    assert other.accuracy == base.accuracy
    assert other.precision == pytest.approx(base.precision, abs=1e-15)
    assert other.recall == pytest.approx(base.recall, abs=1e-15)
    assert other.f1 == pytest.approx(base.f1, abs=1e-15)
    assert other.mcc == pytest.approx(base.mcc, abs=1e-15)


@settings(max_examples=300)
@given(st.lists(st.integers(min_value=0, max_value=60), min_size=4, max_size=4))
def test_binary_mcc_equals_covariance_form(cells):
    counts = np.asarray(cells, dtype=np.int64).reshape(2, 2)
    if counts.sum() == 0:
        counts[0, 0] = 1
    rep = classification_metrics(cm_from(counts))
    assert abs(rep.mcc - rk_mcc(counts)) <= 1e-12


# ------------------------------------------------------- regression_metrics

def test_regression_perfect():
    rep = regression_metrics([1.5, -2.0, 4.0], [1.5, -2.0, 4.0])
    assert (rep.mae, rep.mse, rep.r2) == (0.0, 0.0, 1.0)


def test_regression_mean_predictor():
    rep = regression_metrics([0.0, 2.0], [1.0, 1.0])
    assert (rep.mae, rep.mse, rep.r2) == (1.0, 1.0, 0.0)


def test_regression_worked_example():
    rep = regression_metrics([1.0, 2.0, 3.0], [2.0, 2.0, 2.0])
    assert rep.mae == 2.0 / 3.0
    assert rep.mse == 2.0 / 3.0
    assert rep.r2 == 0.0


def test_regression_zero_variance_warns():
    with pytest.warns(DataWarning, match="zero target variance"):
        rep = regression_metrics([3.0, 3.0], [1.0, 5.0])
    assert rep.r2 == 0.0
    assert rep.mse == 4.0


def test_regression_errors():
    with pytest.raises(ValueError):
        regression_metrics([1.0], [1.0, 2.0])
    with pytest.raises(ValueError):
        regression_metrics([], [])


@settings(max_examples=200)
@given(
    st.lists(st.floats(min_value=-1e6, max_value=1e6), min_size=1, max_size=50),
    st.data(),
)
def test_jensen_mae_squared_below_mse(y_true, data):
    n = len(y_true)
    y_pred = data.draw(
        st.lists(st.floats(min_value=-1e6, max_value=1e6), min_size=n, max_size=n)
    )
    import warnings as w

    with w.catch_warnings():
        w.simplefilter("ignore", DataWarning)
        rep = regression_metrics(y_true, y_pred)
    # tiny slack: at Jensen equality (all |errors| equal) the two sides are
    # the same real number and float rounding can land either side
    assert rep.mae * rep.mae <= rep.mse * (1.0 + 1e-12) + 1e-300
    assert rep.mae >= 0.0 and rep.mse >= 0.0
    assert rep.r2 <= 1.0

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dtization import (
    DataError,
    Dataset,
    MODE_AS_PUBLISHED,
    MODE_DESCENDING,
    ScalingFactorTable,
    best_split,
    calculate_sf,
    exponent,
    gini_impurity,
    regression_impurity,
)

from _oracles import exact_gini, exact_variance, oracle_best_split
from conftest import random_dataset


def classification_ds(X, labels):
    X = np.asarray(X, dtype=np.float64)
    names = tuple(f"f{j}" for j in range(X.shape[1]))
    return Dataset(feature_names=names, X=X, target=list(labels),
                   task_kind="classification")


def regression_ds(X, y):
    X = np.asarray(X, dtype=np.float64)
    names = tuple(f"f{j}" for j in range(X.shape[1]))
    return Dataset(feature_names=names, X=X, target=np.asarray(y, dtype=np.float64),
                   task_kind="regression")


# ----------------------------------------------------------------- exponent

def test_exponent_worked_values():
    assert exponent(1) == pytest.approx(0.6931471805599453, abs=1e-15)
    assert exponent(13) == pytest.approx(0.05331901389, abs=1e-10)
    assert exponent(8) == pytest.approx(0.08664339757, abs=1e-10)


def test_exponent_rejects_non_positive():
    with pytest.raises(ValueError):
        exponent(0)
    with pytest.raises(ValueError):
        exponent(-3)


# --------------------------------------------------------------- impurities

def test_gini_worked_values():
    assert gini_impurity(["a", "a", "a"]) == 0.0
    assert gini_impurity(["a", "b"]) == 0.5
    assert gini_impurity(["a", "a", "b", "c"]) == 0.625


def test_gini_empty_rejected():
    with pytest.raises(ValueError):
        gini_impurity([])


@given(st.lists(st.sampled_from("abcd"), min_size=1, max_size=40))
def test_gini_matches_exact_rational(labels):
    got = gini_impurity(labels)
    want = exact_gini(labels)
    assert abs(got - float(want)) <= 1e-15
    assert 0.0 <= got <= 1.0 - 1.0 / len(set(labels)) + 1e-15


def test_regression_impurity_worked_values():
    assert regression_impurity([4, 4, 4]) == 0.0
    assert regression_impurity([0, 2]) == 1.0
    assert regression_impurity([1, 2, 3, 4]) == 1.25


def test_regression_impurity_empty_rejected():
    with pytest.raises(ValueError):
        regression_impurity([])


@given(st.lists(st.floats(min_value=-100, max_value=100), min_size=1, max_size=40))
def test_regression_impurity_matches_exact_rational(values):
    got = regression_impurity(values)
    want = float(exact_variance(values))
    assert got == pytest.approx(want, rel=1e-12, abs=1e-12)


# --------------------------------------------------------------- best_split

def test_best_split_worked_example():
    d = classification_ds([[1], [2], [10], [11]], "aabb")
    choice = best_split(d)
    assert choice.feature == "f0"
    assert choice.split_point == 6.0
    assert choice.impurity_decrease == 0.5  # parent 0.5, both children pure


def test_best_split_pure_node_returns_none():
    d = classification_ds([[1], [2], [3], [4]], "aaaa")
    assert best_split(d) is None


def test_best_split_constant_features_return_none():
    d = classification_ds([[5], [5], [5]], "aab")
    assert best_split(d) is None


def test_best_split_rejects_tiny_nodes():
    d = classification_ds([[1]], "a")
    with pytest.raises(DataError):
        best_split(d)


def test_best_split_feature_tie_prefers_lower_index():
    # identical columns: both split perfectly; f0 must win
    d = classification_ds([[1, 1], [2, 2], [10, 10], [11, 11]], "aabb")
    assert best_split(d).feature == "f0"


def test_best_split_threshold_tie_prefers_smaller():
    # thresholds 1.5 and 3.5 give mirrored partitions with equal impurity
    d = classification_ds([[1], [2], [3], [4]], "abba")
    choice = best_split(d)
    assert choice.split_point == 1.5


def test_best_split_regression_worked():
    d = regression_ds([[1], [2], [10], [11]], [1.0, 1.0, 9.0, 9.0])
    choice = best_split(d)
    assert choice.feature == "f0"
    assert choice.split_point == 6.0
    assert choice.impurity_decrease == 16.0  # parent var 16, children 0


@settings(max_examples=150)
@given(st.integers(min_value=0, max_value=10**9), st.booleans())
def test_best_split_matches_exhaustive_oracle(seed, classify):
    rng = np.random.default_rng(seed)
    task = "classification" if classify else "regression"
    d = random_dataset(rng, task, n_max=12, nf_max=3, k_max=3)
    got = best_split(d)
    want = oracle_best_split(d.X, d.target, task)
    if want is None:
        assert got is None
        return
    f, thr, dec = want
    assert got.feature == d.feature_names[f]
    assert got.split_point == thr
    assert got.impurity_decrease == dec


# ------------------------------------------------------------- calculate_sf

def test_calculate_sf_single_feature_worked():
    d = classification_ds([[1], [2], [10], [11]], "aabb")
    tab = calculate_sf(d, exponent(1))
    assert tab.factors == {"f0": 2.0}
    assert tab.first_depth == {"f0": 1}
    assert tab.mode == MODE_AS_PUBLISHED


def test_calculate_sf_pure_target_all_factors_one():
    d = classification_ds([[1, 5], [2, 6], [3, 7]], "aaa")
    tab = calculate_sf(d, exponent(2))
    assert tab.factors == {"f0": 1.0, "f1": 1.0}
    assert tab.first_depth == {}


def test_calculate_sf_two_level_worked():
    # f0 separates class c at the root; f1 separates a from b at depth 2
    X = [[0, 0], [0, 0], [0, 1], [0, 1], [10, 0], [10, 1]]
    d = classification_ds(X, "aabbcc")
    tab = calculate_sf(d, exponent(2), mode=MODE_DESCENDING)
    assert tab.first_depth == {"f0": 1, "f1": 2}
    assert tab.factors["f0"] == 1.0
    assert tab.factors["f1"] == pytest.approx(0.7071067811865476, rel=1e-15)

    pub = calculate_sf(d, exponent(2), mode=MODE_AS_PUBLISHED)
    assert pub.factors["f1"] == 2.0
    assert pub.factors["f0"] == pytest.approx(math.sqrt(2.0), rel=1e-15)


def test_calculate_sf_boundary_factors_exact():
    # a feature first chosen at depth nf gets factor exactly 2 (as-published);
    # a root feature gets exactly 1 in descending mode
    X = [[0, 0], [0, 0], [0, 1], [0, 1], [10, 0], [10, 1]]
    d = classification_ds(X, "aabbcc")
    pub = calculate_sf(d, exponent(2))
    assert pub.factors["f1"] == 2.0
    desc = calculate_sf(d, exponent(2), mode=MODE_DESCENDING)
    assert desc.factors["f0"] == 1.0


def test_calculate_sf_input_validation():
    d = classification_ds([[1], [2]], "ab")
    with pytest.raises(ValueError):
        calculate_sf(d, 0.0)
    with pytest.raises(ValueError):
        calculate_sf(d, -1.0)
    with pytest.raises(ValueError):
        calculate_sf(d, exponent(1) * 1.5)  # wrong nf
    with pytest.raises(ValueError):
        calculate_sf(d, exponent(1), mode="sideways")
    unlabeled = Dataset(feature_names=("f",), X=np.ones((2, 1)))
    with pytest.raises(DataError):
        calculate_sf(unlabeled, exponent(1))


def test_scaling_factor_table_rejects_bad_mode():
    with pytest.raises(ValueError):
        ScalingFactorTable(exponent_x=0.5, nf_total=1, mode="x",
                           factors={}, first_depth={})


@settings(max_examples=60)
@given(st.integers(min_value=0, max_value=10**9), st.booleans())
def test_calculate_sf_determinism(seed, classify):
    rng1 = np.random.default_rng(seed)
    rng2 = np.random.default_rng(seed)
    task = "classification" if classify else "regression"
    d1 = random_dataset(rng1, task)
    d2 = random_dataset(rng2, task)
    t1 = calculate_sf(d1, exponent(d1.nf))
    t2 = calculate_sf(d2, exponent(d2.nf))
    assert t1 == t2


@settings(max_examples=60)
@given(st.integers(min_value=0, max_value=10**9), st.booleans())
def test_factor_ranges_and_depth_bound(seed, classify):
    rng = np.random.default_rng(seed)
    task = "classification" if classify else "regression"
    d = random_dataset(rng, task, n_max=60, nf_max=6)
    x = exponent(d.nf)
    pub = calculate_sf(d, x, mode=MODE_AS_PUBLISHED)
    desc = calculate_sf(d, x, mode=MODE_DESCENDING)
    assert pub.first_depth == desc.first_depth
    for name in d.feature_names:
        dep = pub.first_depth.get(name)
        if dep is None:
            assert pub.factors[name] == 1.0
            assert desc.factors[name] == 1.0
        else:
            assert 1 <= dep <= d.nf
            assert 1.0 < pub.factors[name] <= 2.0
            assert 0.5 < desc.factors[name] <= 1.0


@settings(max_examples=40)
@given(st.integers(min_value=0, max_value=10**9), st.booleans())
def test_no_feature_repeats_on_a_path(seed, classify):
    rng = np.random.default_rng(seed)
    task = "classification" if classify else "regression"
    d = random_dataset(rng, task, n_max=50, nf_max=6)
    seen = []

    def trace(depth, name, path):
        seen.append((depth, name, path))
        assert name not in path
        assert depth == len(path) + 1

    calculate_sf(d, exponent(d.nf), on_split=trace)
    for _, name, _ in seen:
        assert name in d.feature_names


@settings(max_examples=40)
@given(st.integers(min_value=0, max_value=10**9), st.booleans())
def test_monotone_transform_invariance(seed, classify):
    rng = np.random.default_rng(seed)
    task = "classification" if classify else "regression"
    # small-integer grid: the maps below are exactly representable and
    # strictly increasing on it, so value order is preserved bit-for-bit
    d = random_dataset(rng, task, n_max=40, nf_max=4, grid=12)
    maps = [
        lambda v: v,
        lambda v: v ** 3,
        lambda v: 4.0 * v - 3.0,
        lambda v: np.exp(v / 4.0),
    ]
    base = calculate_sf(d, exponent(d.nf))
    cols = [maps[j % len(maps)](d.X[:, j]) for j in range(d.nf)]
    warped = Dataset(
        feature_names=d.feature_names,
        X=np.column_stack(cols),
        target=d.target,
        task_kind=d.task_kind,
    )
    other = calculate_sf(warped, exponent(d.nf))
    assert other.first_depth == base.first_depth
    assert other.factors == base.factors

"""Supervised feature scaling with decision-tree-derived factors.

The package fits per-feature scaling factors from the depth at which an
unpruned decision tree first splits on each feature, multiplies them into a
robust quartile transform, and ships the four usual unsupervised baselines
plus a benchmark harness (KNN / OLS, eight metrics) for comparing them.
"""

from ._version import __version__
from .bench import (
    BenchConfig,
    BenchReport,
    FORMAT_ROWS,
    FORMAT_TEXT,
    MetricRow,
    REPORT_FORMATS,
    UsageError,
    render,
    render_rows,
    render_text,
    report_body,
    run_bench,
)
from .dataset import (
    DataError,
    DataWarning,
    Dataset,
    QuartileSummary,
    SplitDataset,
    TASK_CLASSIFICATION,
    TASK_KINDS,
    TASK_REGRESSION,
    TASK_UNLABELED,
    TargetKindError,
    load_csv,
    quartiles,
    save_csv,
    train_test_split,
)
from .metrics import (
    CLASSIFICATION_METRICS,
    ClassificationReport,
    ConfusionMatrix,
    REGRESSION_METRICS,
    RegressionReport,
    classification_metrics,
    confusion_matrix,
    regression_metrics,
)
from .models import KnnModel, OlsModel, knn_predict, ols_fit, ols_predict
from .scalers import (
    FittedScaler,
    METHOD_DTIZATION,
    METHOD_LOG,
    METHOD_MINMAX,
    METHOD_ROBUST,
    METHOD_STANDARD,
    METHODS,
    ScalerFileError,
    fit,
    load_scaler,
    param_names,
    save_scaler,
    transform,
)
from .tree import (
    FACTOR_MODES,
    MODE_AS_PUBLISHED,
    MODE_DESCENDING,
    ScalingFactorTable,
    SplitChoice,
    best_split,
    calculate_sf,
    exponent,
    gini_impurity,
    regression_impurity,
)

__all__ = [
    "__version__",
    # dataset
    "Dataset", "QuartileSummary", "SplitDataset",
    "DataError", "TargetKindError", "DataWarning",
    "TASK_CLASSIFICATION", "TASK_REGRESSION", "TASK_UNLABELED", "TASK_KINDS",
    "load_csv", "save_csv", "quartiles", "train_test_split",
    # tree
    "exponent", "gini_impurity", "regression_impurity",
    "best_split", "calculate_sf", "SplitChoice", "ScalingFactorTable",
    "MODE_AS_PUBLISHED", "MODE_DESCENDING", "FACTOR_MODES",
    # scalers
    "fit", "transform", "save_scaler", "load_scaler", "param_names",
    "FittedScaler", "ScalerFileError", "METHODS",
    "METHOD_MINMAX", "METHOD_STANDARD", "METHOD_LOG", "METHOD_ROBUST",
    "METHOD_DTIZATION",
    # metrics
    "confusion_matrix", "classification_metrics", "regression_metrics",
    "ConfusionMatrix", "ClassificationReport", "RegressionReport",
    "CLASSIFICATION_METRICS", "REGRESSION_METRICS",
    # models
    "KnnModel", "knn_predict", "OlsModel", "ols_fit", "ols_predict",
    # bench
    "BenchConfig", "BenchReport", "MetricRow", "UsageError",
    "run_bench", "render", "render_text", "render_rows", "report_body",
    "FORMAT_TEXT", "FORMAT_ROWS", "REPORT_FORMATS",
]

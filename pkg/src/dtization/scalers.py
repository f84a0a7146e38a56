"""Five feature-scaling methods behind one fit/transform interface.

``dtization`` composes a robust quartile transform with tree-derived
per-feature factors; the other four (minmax, standard, log, robust) are the
usual unsupervised baselines.  Fitted state is plain per-feature statistics
and serialises to a checksummed JSON file with lossless hex floats.
"""

from __future__ import annotations

import hashlib
import json
import warnings
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .dataset import DataError, Dataset, DataWarning, TASK_UNLABELED, quartiles
from .tree import (
    FACTOR_MODES,
    MODE_AS_PUBLISHED,
    ScalingFactorTable,
    calculate_sf,
    exponent,
)

METHOD_MINMAX = "minmax"
METHOD_STANDARD = "standard"
METHOD_LOG = "log"
METHOD_ROBUST = "robust"
METHOD_DTIZATION = "dtization"
METHODS = (METHOD_MINMAX, METHOD_STANDARD, METHOD_LOG, METHOD_ROBUST, METHOD_DTIZATION)

FORMAT_VERSION = 1

# Per-method per-feature statistic names, in serialisation order.
_PARAM_NAMES = {
    METHOD_MINMAX: ("min", "max"),
    METHOD_STANDARD: ("mean", "std"),
    METHOD_LOG: ("shift",),
    METHOD_ROBUST: ("q1", "q3"),
    METHOD_DTIZATION: ("q1", "q3", "factor"),
}


class ScalerFileError(Exception):
    """A scaler file could not be read back: bad JSON, wrong version or
    method, or checksum mismatch."""


def param_names(method: str) -> tuple[str, ...]:
    """Statistic names a method stores per feature, in display order."""
    return _PARAM_NAMES[method]


@dataclass(frozen=True)
class FittedScaler:
    """Fitted per-feature statistics for one method.

    ``params`` maps feature name -> statistic name -> float.  dtization
    scalers additionally carry the full factor table (depths, exponent) for
    inspection; its factors duplicate the per-feature "factor" entries.
    """

    method: str
    feature_names: tuple[str, ...]
    params: dict[str, dict[str, float]]
    table: ScalingFactorTable | None = None

    def __post_init__(self) -> None:
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if set(self.params) != set(self.feature_names):
            raise ValueError("params must cover exactly the fitted features")
        want = set(_PARAM_NAMES[self.method])
        for name, stats in self.params.items():
            if set(stats) != want:
                raise ValueError(
                    f"feature {name!r} has wrong statistics for {self.method}"
                )
            if self.method == METHOD_MINMAX and not stats["min"] <= stats["max"]:
                raise ValueError(f"feature {name!r}: min > max")
            if self.method == METHOD_STANDARD and not stats["std"] >= 0.0:
                raise ValueError(f"feature {name!r}: negative std")
        if (self.table is not None) != (self.method == METHOD_DTIZATION):
            raise ValueError("factor table is present iff method is dtization")


def _robust_column(v: np.ndarray, q1: float, q3: float) -> np.ndarray:
    iqr = q3 - q1
    if iqr == 0.0:
        return np.zeros_like(v)
    return (v - q1) / iqr


def _scale_column(method: str, v: np.ndarray, stats: Mapping[str, float]) -> np.ndarray:
    if method == METHOD_MINMAX:
        lo, hi = stats["min"], stats["max"]
        rng = hi - lo
        if rng == 0.0:
            return np.zeros_like(v)
        return (v - lo) / rng
    if method == METHOD_STANDARD:
        mu, sd = stats["mean"], stats["std"]
        if sd == 0.0:
            return np.zeros_like(v)
        return (v - mu) / sd
    if method == METHOD_LOG:
        return np.log(v + stats["shift"])
    if method == METHOD_ROBUST:
        return _robust_column(v, stats["q1"], stats["q3"])
    # dtization is literally the robust transform scaled by the tree factor,
    # so the two stay bitwise consistent.
    return stats["factor"] * _robust_column(v, stats["q1"], stats["q3"])


def fit(
    d: Dataset,
    method: str,
    mode: str = MODE_AS_PUBLISHED,
) -> FittedScaler:
    """Fit one scaling method on a dataset.

    dtization requires a labeled dataset (the ranking tree is supervised);
    the four baselines ignore the target entirely.  The log shift per
    feature is max(0, 1 - min), placing every training argument at >= 1.
    """
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    if mode not in FACTOR_MODES:
        raise ValueError(f"unknown factor mode {mode!r}")
    params: dict[str, dict[str, float]] = {}
    if method == METHOD_DTIZATION:
        if d.task_kind == TASK_UNLABELED or d.target is None:
            raise DataError("dtization requires a labeled dataset")
        table = calculate_sf(d, exponent(d.nf), mode=mode)
        for name in d.feature_names:
            q = quartiles(d.column(name))
            params[name] = {"q1": q.q1, "q3": q.q3, "factor": table.factors[name]}
        return FittedScaler(
            method=method, feature_names=d.feature_names, params=params, table=table
        )
    for name in d.feature_names:
        col = d.column(name)
        if method == METHOD_MINMAX:
            params[name] = {"min": float(col.min()), "max": float(col.max())}
        elif method == METHOD_STANDARD:
            params[name] = {"mean": float(col.mean()), "std": float(col.std())}
        elif method == METHOD_LOG:
            mn = float(col.min())
            # constant column: pin the argument at exactly 1 so the output
            # is all-zero, like every other method's degenerate case
            shift = (1.0 - mn) if float(col.max()) == mn else max(0.0, 1.0 - mn)
            params[name] = {"shift": shift}
        else:
            q = quartiles(col)
            params[name] = {"q1": q.q1, "q3": q.q3}
    return FittedScaler(method=method, feature_names=d.feature_names, params=params)


def transform(scaler: FittedScaler, d: Dataset) -> Dataset:
    """Apply a fitted scaler column-wise; target and metadata pass through.

    The dataset must carry every fitted feature; extra columns are passed
    through untouched with a warning.  The input dataset is never modified
    and column order follows the input.
    """
    missing = [n for n in scaler.feature_names if n not in d.feature_names]
    if missing:
        raise DataError(f"dataset is missing fitted features: {missing}")
    extra = [n for n in d.feature_names if n not in scaler.feature_names]
    if extra:
        warnings.warn(
            f"passing {len(extra)} unfitted column(s) through untouched: {extra}",
            DataWarning,
            stacklevel=2,
        )
    fitted = set(scaler.feature_names)
    cols = [
        _scale_column(scaler.method, d.column(name), scaler.params[name])
        if name in fitted
        else d.column(name).copy()
        for name in d.feature_names
    ]
    out = np.ascontiguousarray(np.column_stack(cols), dtype=np.float64)
    return Dataset(
        feature_names=d.feature_names,
        X=out,
        target=None if d.target is None else d.target.copy(),
        target_name=d.target_name,
        task_kind=d.task_kind,
        check_finite=False,
    )


def _float_out(v: float):
    # Lossless and human-greppable: exact hex plus a rounded decimal echo.
    return {"hex": float(v).hex(), "approx": float(f"{float(v):.9g}")}


def _float_in(obj) -> float:
    try:
        return float.fromhex(obj["hex"])
    except (TypeError, KeyError, ValueError) as exc:
        raise ScalerFileError(f"bad float encoding in scaler file: {obj!r}") from exc


def _payload(scaler: FittedScaler) -> dict:
    doc = {
        "format_version": FORMAT_VERSION,
        "method": scaler.method,
        "feature_names": list(scaler.feature_names),
        "params": {
            name: {k: _float_out(v) for k, v in scaler.params[name].items()}
            for name in scaler.feature_names
        },
    }
    if scaler.table is not None:
        t = scaler.table
        doc["mode"] = t.mode
        doc["factor_table"] = {
            "exponent_x": _float_out(t.exponent_x),
            "nf_total": t.nf_total,
            "first_depth": {
                name: t.first_depth.get(name) for name in scaler.feature_names
            },
        }
    return doc


def _checksum(payload: dict) -> str:
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":")).encode("utf-8")
    return hashlib.sha256(blob).hexdigest()


def save_scaler(scaler: FittedScaler, path) -> None:
    """Write a fitted scaler to a JSON file (exact floats, sha256 checksum)."""
    payload = _payload(scaler)
    doc = dict(payload)
    doc["checksum"] = _checksum(payload)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_scaler(path) -> FittedScaler:
    """Read a scaler file back; raises ScalerFileError on any corruption."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ScalerFileError(f"scaler file is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ScalerFileError("scaler file must hold a JSON object")
    version = doc.get("format_version")
    if version != FORMAT_VERSION:
        raise ScalerFileError(
            f"unsupported scaler format_version {version!r}; expected {FORMAT_VERSION}"
        )
    method = doc.get("method")
    if method not in METHODS:
        raise ScalerFileError(f"unknown method {method!r} in scaler file")
    recorded = doc.get("checksum")
    payload = {k: v for k, v in doc.items() if k != "checksum"}
    if recorded != _checksum(payload):
        raise ScalerFileError("scaler file checksum mismatch; file is corrupt")
    try:
        names = tuple(str(n) for n in doc["feature_names"])
        raw = doc["params"]
        params = {
            name: {k: _float_in(v) for k, v in raw[name].items()} for name in names
        }
        table = None
        if method == METHOD_DTIZATION:
            ft = doc["factor_table"]
            depths = {
                name: int(dep)
                for name, dep in ft["first_depth"].items()
                if dep is not None
            }
            table = ScalingFactorTable(
                exponent_x=_float_in(ft["exponent_x"]),
                nf_total=int(ft["nf_total"]),
                mode=doc["mode"],
                factors={name: params[name]["factor"] for name in names},
                first_depth=depths,
            )
    except (KeyError, TypeError) as exc:
        raise ScalerFileError(f"scaler file is missing fields: {exc}") from exc
    try:
        return FittedScaler(
            method=method, feature_names=names, params=params, table=table
        )
    except ValueError as exc:
        raise ScalerFileError(str(exc)) from exc

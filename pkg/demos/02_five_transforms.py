"""
The five scaling methods side by side
======================================

One skewed column through minmax, standard, log, robust, and dtization,
plus the decomposition dtization = S x robust and a save/load round trip.
Run from the repo root: python3 demos/02_five_transforms.py
"""

import tempfile
from pathlib import Path

import numpy as np

from dtization import (
    Dataset, METHODS, fit, load_scaler, param_names, save_scaler, transform,
)

# one feature with a long right tail, labels split at the gap
values = [1.0, 2.0, 2.5, 3.0, 3.5, 50.0, 60.0, 70.0]
d = Dataset(
    feature_names=("amount",),
    X=np.array(values).reshape(-1, 1),
    target=["low"] * 5 + ["high"] * 3,
    task_kind="classification",
)

# fit every method on the same column
fitted = {m: fit(d, m) for m in METHODS}

print("fitted statistics per method:")
for m in METHODS:
    stats = fitted[m].params["amount"]
    pretty = "  ".join(f"{k}={stats[k]:.4f}" for k in param_names(m))
    print(f"  {m:<10} {pretty}")
print()

print(f"{'x':>8}" + "".join(f"{m:>12}" for m in METHODS))
outs = {m: transform(fitted[m], d).X.ravel() for m in METHODS}
for i, v in enumerate(values):
    row = "".join(f"{outs[m][i]:>12.4f}" for m in METHODS)
    print(f"{v:>8.1f}{row}")
print()

# dtization is literally the robust output times the factor
s = fitted["dtization"].table.factors["amount"]
print(f"dtization factor S = {s:.6f}")
print("dtization == S * robust, bitwise:",
      np.array_equal(outs["dtization"], s * outs["robust"]))
print()

# scaler files round-trip transforms exactly
with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "amount.scaler.json"
    save_scaler(fitted["dtization"], path)
    again = load_scaler(path)
    print("saved scaler file:", path.name, f"({path.stat().st_size} bytes)")
    print("reloaded transform is bit-identical:",
          transform(again, d).X.tobytes() == outs["dtization"].tobytes())

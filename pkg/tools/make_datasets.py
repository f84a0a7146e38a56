"""One-off generator for the CSVs bundled under data/.

Run from the repository root:  python3 tools/make_datasets.py

wine.csv is the classic 178x13 three-class wine recognition table (UCI via
scikit-learn).  synth_regression.csv is a small synthetic regression table
with mixed feature scales, sized like the possum dataset so the regression
benchmark stays fast.
"""

from pathlib import Path

import numpy as np

OUT = Path(__file__).resolve().parent.parent / "data"


def write_wine() -> None:
    from sklearn.datasets import load_wine

    wine = load_wine()
    names = [n.replace("/", "_per_") for n in wine.feature_names]
    path = OUT / "wine.csv"
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(",".join(names + ["class"]) + "\n")
        for row, lab in zip(wine.data, wine.target):
            cells = [repr(float(v)) for v in row] + [f"class_{int(lab)}"]
            fh.write(",".join(cells) + "\n")
    print(f"wrote {path}: {wine.data.shape[0]} rows, {wine.data.shape[1]} features")


def write_regression(n: int = 120, seed: int = 7) -> None:
    rng = np.random.default_rng(seed)
    age = rng.uniform(1.0, 9.0, n)                  # years
    head = rng.normal(92.0, 3.5, n)                 # mm
    tail = rng.normal(36.0, 2.0, n)                 # cm
    chest = rng.normal(27.0, 2.0, n)                # cm
    mass = rng.uniform(2000.0, 4500.0, n)           # g, deliberately huge scale
    total = (
        85.0
        + 0.9 * age
        - 0.35 * head
        + 0.8 * tail
        + 0.25 * chest
        + 0.0004 * mass
        + rng.normal(0.0, 1.2, n)
    )
    path = OUT / "synth_regression.csv"
    cols = {
        "age": age, "head_mm": head, "tail_cm": tail,
        "chest_cm": chest, "mass_g": mass, "total_cm": total,
    }
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(",".join(cols) + "\n")
        for i in range(n):
            fh.write(",".join(repr(float(v[i])) for v in cols.values()) + "\n")
    print(f"wrote {path}: {n} rows, {len(cols) - 1} features")


if __name__ == "__main__":
    OUT.mkdir(exist_ok=True)
    write_wine()
    write_regression()

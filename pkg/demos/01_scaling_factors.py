"""
How the per-feature scaling factors are derived
================================================

A small labeled table goes through the ranking tree; every time a feature is
chosen for the first time, its depth is frozen and turned into a factor.
Run from the repo root: python3 demos/01_scaling_factors.py
"""

import numpy as np

from dtization import Dataset, calculate_sf, exponent

# a toy table: f0 separates the classes cleanly, f1 helps one level deeper,
# f2 is constant and can never be split on
X = np.array([
    [1.0, 5.0, 7.0],
    [2.0, 6.0, 7.0],
    [1.5, 40.0, 7.0],
    [2.5, 41.0, 7.0],
    [10.0, 5.5, 7.0],
    [11.0, 40.5, 7.0],
])
d = Dataset(
    feature_names=("f0", "f1", "f2"),
    X=X,
    target=["a", "a", "b", "b", "c", "c"],
    task_kind="classification",
)

# the rate constant: with nf features the depth curve reaches 2 at depth nf
x = exponent(d.nf)
print(f"nf={d.nf}  exponent x = ln(2)/nf = {x:.6f}")
print()

# trace every split the ranking tree makes
print("splits, in the order the tree visits them:")


def trace(depth, name, path):
    print(f"  depth {depth}: picked {name!r}  (path so far: {list(path)})")


table = calculate_sf(d, x, on_split=trace)
print()

# first-use depths and the factors they induce, in both modes
desc = calculate_sf(d, x, mode="descending")
print("feature  first_depth  as-published S=2^(d/nf)  descending S=2^(-(d-1)/nf)")
for name in d.feature_names:
    dep = table.first_depth.get(name, "-")
    print(f"{name:>7}  {str(dep):>11}  {table.factors[name]:>23.6f}  {desc.factors[name]:>26.6f}")

print()
print("f0 at depth 1:", table.factors["f0"] == 2.0 ** (1 / d.nf), "(2^(1/3))")
print("f2 never used, factor stays exactly 1.0 in both modes:",
      table.factors["f2"] == 1.0 == desc.factors["f2"])
print("descending mode starts at 1.0 for depth 1:", desc.factors["f0"] == 1.0)

"""
Regression benchmark and what scaling can (not) change under OLS
=================================================================

The bundled possum-style morphometry table (120 rows) through the regression
protocol: 80/20 split, scalers fitted on train rows, OLS scored on the rest.
Run from the repo root: python3 demos/04_regression_benchmark.py

The CLI form of the same run:
  dtization bench --data data/synth_regression.csv --target total_cm \
      --task regression --seed 42 --format rows
"""

from dtization import BenchConfig, render, run_bench

cfg = BenchConfig(
    data_path="data/synth_regression.csv",
    target="total_cm",
    task_kind="regression",
    seed=42,
)
report = run_bench(cfg)
print(render(report), end="")
print()

# Ordinary least squares is equivariant under per-feature affine maps: any
# scaler of the form a*x + b only re-parameterizes the coefficients, so the
# fitted predictions (and hence MAE/MSE/R2) are identical.  minmax, standard,
# robust, and dtization are all affine; log is not, so it alone moves the
# numbers.
mae = {m: report.values_for(m)["mae"] for m in report.config.scalers}
affine = ("minmax", "standard", "robust", "dtization")
print("OLS MAE per scaler:")
for m, v in mae.items():
    tag = "affine" if m in affine else "nonlinear"
    print(f"  {m:<10} {v:.6f}  ({tag})")
print()
print("all four affine scalers agree:",
      len({f"{mae[m]:.12f}" for m in affine}) == 1)
print("log differs:", f"{mae['log']:.12f}" != f"{mae['minmax']:.12f}")
print()
print("takeaway: with an OLS probe the scaler choice is invisible unless the")
print("transform is nonlinear; distance-based models like KNN are the setting")
print("where per-feature factors actually reweight the geometry (see demo 03).")

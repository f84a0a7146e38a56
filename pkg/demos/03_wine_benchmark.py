"""
Wine classification benchmark
==============================

The full protocol on the bundled wine table (178 rows, 13 features):
stratified 80/20 split, every scaler fitted on the train rows only,
KNN (k=3) scored on the held-out rows.
Run from the repo root: python3 demos/03_wine_benchmark.py

The CLI form of the same run:
  dtization bench --data data/wine.csv --target class --task classification \
      --k 3 --seed 42 --format text
"""

from dtization import BenchConfig, render, report_body, run_bench

cfg = BenchConfig(
    data_path="data/wine.csv",
    target="class",
    task_kind="classification",
    k=3,
    test_fraction=0.2,
    seed=42,
)
report = run_bench(cfg)

print(render(report), end="")
print()

# the factor table the dtization scaler learned on the train split
table = report.fitted["dtization"].table
print("dtization factors learned on the train split (as-published mode):")
for name in sorted(table.factors, key=lambda n: (table.depth_of(n) or 99, n)):
    dep = table.first_depth.get(name)
    print(f"  {name:<30} depth={'-' if dep is None else dep}  S={table.factors[name]:.4f}")
print()

# identical config, identical bytes (minus the timestamp line)
again = run_bench(BenchConfig(
    data_path="data/wine.csv",
    target="class",
    task_kind="classification",
    k=3,
    test_fraction=0.2,
    seed=42,
))
print("second run is byte-identical:",
      report_body(render(report)) == report_body(render(again)))

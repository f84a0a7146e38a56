from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from dtization import Dataset, TASK_CLASSIFICATION, TASK_REGRESSION

settings.register_profile(
    "suite", deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("suite")

DATA_DIR = Path(__file__).resolve().parent.parent / "data"
WINE_CSV = DATA_DIR / "wine.csv"
REGRESSION_CSV = DATA_DIR / "synth_regression.csv"


def random_dataset(
    rng: np.random.Generator,
    task: str,
    n_max: int = 40,
    nf_max: int = 5,
    k_max: int = 3,
    grid: int | None = None,
) -> Dataset:
    """Random labeled dataset.  ``grid`` draws features from small integers
    (useful when a test needs exactly representable values)."""
    n = int(rng.integers(2, n_max + 1))
    nf = int(rng.integers(1, nf_max + 1))
    if grid is not None:
        X = rng.integers(-grid, grid + 1, size=(n, nf)).astype(np.float64)
    else:
        X = rng.normal(0.0, 3.0, size=(n, nf))
        if rng.random() < 0.3:
            # inject duplicates so candidate boundaries and ties get exercised
            dup = rng.integers(0, n, size=max(1, n // 3))
            X[dup] = X[rng.integers(0, n, size=dup.size)]
    names = tuple(f"f{j}" for j in range(nf))
    if task == TASK_CLASSIFICATION:
        k = int(rng.integers(2, k_max + 1))
        target = [f"c{int(v)}" for v in rng.integers(0, k, size=n)]
    else:
        target = rng.normal(0.0, 2.0, size=n)
        if rng.random() < 0.2:
            target = np.round(target)  # exact ties in the target
    return Dataset(feature_names=names, X=X, target=target, task_kind=task)


# ---------------------------------------------------------------------------
# acceptance-criteria reporting: tests/test_acceptance.py registers one line
# per criterion here; the summary prints after the run so pass/fail lines are
# always visible regardless of output capturing.

ACCEPTANCE_RESULTS: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(line)


@pytest.fixture
def tmp_csv(tmp_path):
    """Write rows (list of lists) to a temp CSV and return its path."""

    def _write(rows, name="data.csv"):
        path = tmp_path / name
        path.write_text("\n".join(",".join(str(c) for c in row) for row in rows) + "\n")
        return path

    return _write

"""Shared fixtures: a cross-family instance suite and the two study runs.

The instance suite is the workhorse for the acceptance checks: for every
instance it holds the exact-queue solution, the bucket-queue solution,
both band traces, and the sweeping-oracle solution.
"""

import time
from dataclasses import dataclass

import pytest

import fastmarch as fm


@dataclass
class Instance:
    name: str
    family: str
    field: fm.SpeedField
    boundary: fm.BoundarySet
    n_buckets: int
    delta: float
    exact: fm.GridFunction
    exact_metrics: fm.RunMetrics
    exact_trace: list
    untidy: fm.GridFunction
    untidy_metrics: fm.RunMetrics
    untidy_trace: list
    oracle: fm.GridFunction


def _bottom_row(n):
    return [(i, 0) for i in range(n + 1)]


# (family, entry factory, n, boundary points, bucket count)
INSTANCE_DEFS = [
    ("constant", lambda: fm.constant_speed(1.0), 10, [(0, 0)], 2),
    ("constant", lambda: fm.constant_speed(2.5), 10, [(10, 0)], 8),
    ("sin-ratio", lambda: fm.sin_ratio_speed(2.0), 10, [(10, 0)], 8),
    ("sin-ratio", lambda: fm.sin_ratio_speed(16.0), 10, _bottom_row(10), 32),
    ("inv-uniform", lambda: fm.inv_uniform_speed(1), 10, [(0, 0)], 2),
    ("inv-uniform", lambda: fm.inv_uniform_speed(2), 10, [(5, 5)], 128),
    ("inv-uniform", lambda: fm.inv_uniform_speed(3), 10, [(0, 0), (10, 10)], 8),
    ("constant", lambda: fm.constant_speed(1.0), 50, [(50, 0)], 32),
    ("constant", lambda: fm.constant_speed(0.5), 50, [(0, 0)], 8),
    ("sin-ratio", lambda: fm.sin_ratio_speed(4.0), 50, [(50, 0)], 2),
    ("sin-ratio", lambda: fm.sin_ratio_speed(8.0), 50, [(25, 25)], 128),
    ("sin-ratio", lambda: fm.sin_ratio_speed(64.0), 50, [(50, 0)], 512),
    ("inv-uniform", lambda: fm.inv_uniform_speed(4), 50, _bottom_row(50), 50),
    ("inv-uniform", lambda: fm.inv_uniform_speed(5), 50, [(50, 0)], 16),
    ("constant", lambda: fm.constant_speed(2.0), 200, [(200, 0)], 64),
    ("constant", lambda: fm.constant_speed(1.0), 200, _bottom_row(200), 16),
    ("sin-ratio", lambda: fm.sin_ratio_speed(4.0), 200, [(200, 0)], 32),
    ("sin-ratio", lambda: fm.sin_ratio_speed(32.0), 200, [(0, 0)], 128),
    ("inv-uniform", lambda: fm.inv_uniform_speed(6), 200, [(200, 0)], 200),
    ("inv-uniform", lambda: fm.inv_uniform_speed(7), 200, [(100, 100)], 8),
]


@pytest.fixture(scope="session")
def instances():
    result = []
    for family, make_entry, n, points, n_buckets in INSTANCE_DEFS:
        spec = fm.GridSpec(n)
        entry = make_entry()
        field = entry.build(spec)
        boundary = fm.BoundarySet(spec, points)

        exact_trace: list = []
        exact, exact_metrics = fm.march(
            field, boundary, fm.ExactQueue(), exact_trace
        )
        queue = fm.UntidyQueue(spec.h, field.f_min, n_buckets)
        untidy_trace: list = []
        untidy, untidy_metrics = fm.march(field, boundary, queue, untidy_trace)
        oracle = fm.sweep_oracle(field, boundary)

        params = ",".join(f"{k}={v}" for k, v in entry.params.items())
        result.append(
            Instance(
                name=f"{family}({params})-n{n}-b{n_buckets}",
                family=family,
                field=field,
                boundary=boundary,
                n_buckets=n_buckets,
                delta=queue.delta,
                exact=exact,
                exact_metrics=exact_metrics,
                exact_trace=exact_trace,
                untidy=untidy,
                untidy_metrics=untidy_metrics,
                untidy_trace=untidy_trace,
                oracle=oracle,
            )
        )
    return result


@pytest.fixture(scope="session")
def error_study(tmp_path_factory):
    out = tmp_path_factory.mktemp("study") / "fig1.csv"
    cfg = fm.ExperimentConfig(grid_sizes=(100,), out=str(out))
    start = time.perf_counter()
    rows = fm.run_error_study(cfg)
    elapsed = time.perf_counter() - start
    return {"rows": rows, "elapsed": elapsed, "path": out}


@pytest.fixture(scope="session")
def scaling_study(tmp_path_factory):
    out = tmp_path_factory.mktemp("study") / "fig2.csv"
    cfg = fm.ExperimentConfig(
        grid_sizes=(64, 128, 256, 512, 1024), seed=0, out=str(out)
    )
    rows = fm.run_scaling_study(cfg)
    return {"rows": rows, "path": out}

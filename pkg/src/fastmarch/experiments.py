"""Benchmark and reproduction harness emitting CSV reports.

Two studies:

* error study ("fig1"): relative error of the bucket-queue solution vs
  the speed ratio, for a ladder of bucket counts, against the analytic
  bound sqrt(2) * ratio / buckets.
* scaling study ("fig2"): instrumented work counters and wall time for
  both queues over a ladder of grid sizes, with buckets = n per size.

CSV files start with '#' comment lines echoing the configuration so a
report is self-describing.  All columns except wall_time are
deterministic for a fixed config and seed.
"""

from __future__ import annotations

import math
from collections import namedtuple
from dataclasses import dataclass
from time import perf_counter
from typing import Callable

import numpy as np

from . import marcher
from ._util import atomic_write
from .grid import GridSpec, BoundarySet, SpeedField, make_speed_field
from .queue_exact import ExactQueue
from .queue_untidy import UntidyQueue
from .verify import check_error_bound

DEFAULT_BUCKET_COUNTS = (2, 8, 32, 128, 512, 2048)
DEFAULT_RATIOS = (1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0)
DEFAULT_ERROR_STUDY_N = 100
DEFAULT_SCALING_SIZES = (64, 128, 256, 512, 1024)
DEFAULT_U_FLOOR = 1.0 / 64.0

# Generator identity recorded into CSV headers: the study shape is
# reproducible anywhere, bit-identical reruns need this exact generator.
PRNG_ID = "numpy-default_rng(PCG64);seed-material=[seed,n]"


@dataclass
class SpeedCatalogEntry:
    """A named speed-field family: parameters plus a per-grid sampler."""

    name: str
    params: dict
    analytic_f_min: float | None
    analytic_f_max: float | None
    sampler_factory: Callable[[GridSpec], Callable[[float, float], float]]

    def sampler(self, spec: GridSpec) -> Callable[[float, float], float]:
        return self.sampler_factory(spec)

    def build(self, spec: GridSpec) -> SpeedField:
        return make_speed_field(spec, self.sampler(spec))


def constant_speed(c: float = 1.0) -> SpeedCatalogEntry:
    c = float(c)
    if not (c > 0.0 and math.isfinite(c)):
        raise ValueError(f"constant speed needs c > 0, got {c!r}")
    return SpeedCatalogEntry(
        "constant", {"c": c}, c, c, lambda spec: lambda x, y: c
    )


def sin_ratio_speed(r: float) -> SpeedCatalogEntry:
    """Radially oscillating speed with analytic extremes 1 and r.

    F(x) = (1 + (r-1)/2) + (r-1)/2 * sin(2*pi*|x|) with |x| the Euclidean
    norm of the point.
    """
    r = float(r)
    if not (r >= 1.0 and math.isfinite(r)):
        raise ValueError(f"sin-ratio speed needs ratio r >= 1, got {r!r}")
    mid = 1.0 + (r - 1.0) / 2.0
    amp = (r - 1.0) / 2.0

    def factory(spec: GridSpec):
        def sample(x: float, y: float) -> float:
            return mid + amp * math.sin(2.0 * math.pi * math.hypot(x, y))

        return sample

    return SpeedCatalogEntry("sin-ratio", {"r": r}, 1.0, r, factory)


def inv_uniform_speed(seed, u_floor: float = DEFAULT_U_FLOOR) -> SpeedCatalogEntry:
    """Random speed with 1/F drawn i.i.d. uniform on (u_floor, 1].

    The floor keeps F bounded (F < 1/u_floor), which the bucket width
    needs; an unbounded 1/u draw is numerically hazardous as u -> 0.
    """
    seed = int(seed)
    u_floor = float(u_floor)
    if not 0.0 < u_floor < 1.0:
        raise ValueError(f"u_floor must be in (0, 1), got {u_floor!r}")

    def factory(spec: GridSpec):
        n = spec.n
        rng = np.random.default_rng([seed, n])
        # 1 - U[0, 1-u_floor) lands in (u_floor, 1], matching the half-open
        # side we want
        u = 1.0 - rng.uniform(0.0, 1.0 - u_floor, size=spec.shape)
        f = 1.0 / u

        def sample(x: float, y: float) -> float:
            return float(f[round(x * n), round(y * n)])

        return sample

    return SpeedCatalogEntry(
        "inv-uniform", {"seed": seed, "u_floor": u_floor}, None, None, factory
    )


_CATALOG = {
    "constant": constant_speed,
    "sin-ratio": sin_ratio_speed,
    "inv-uniform": inv_uniform_speed,
}


def speed_entry(name: str, **params) -> SpeedCatalogEntry:
    try:
        factory = _CATALOG[name]
    except KeyError:
        raise ValueError(
            f"unknown speed field {name!r}; choices: {sorted(_CATALOG)}"
        ) from None
    return factory(**params)


@dataclass(frozen=True)
class ExperimentConfig:
    grid_sizes: tuple[int, ...]
    bucket_counts: tuple[int, ...] = DEFAULT_BUCKET_COUNTS
    ratios: tuple[float, ...] = DEFAULT_RATIOS
    seed: int = 0
    out: str = "study.csv"
    u_floor: float = DEFAULT_U_FLOOR

    def __post_init__(self):
        if not self.grid_sizes or any(n < 2 for n in self.grid_sizes):
            raise ValueError("grid_sizes must be non-empty with every n >= 2")
        if any(nb < 1 for nb in self.bucket_counts):
            raise ValueError("bucket_counts must all be >= 1")
        if any(r < 1.0 for r in self.ratios):
            raise ValueError("ratios must all be >= 1")


ErrorStudyRow = namedtuple("ErrorStudyRow", "r n_buckets n max_rel_err bound")
ScalingStudyRow = namedtuple(
    "ScalingStudyRow",
    "n num_interior queue pops stale_skips bucket_traversals wall_time",
)


def run_error_study(cfg: ExperimentConfig) -> list[ErrorStudyRow]:
    """Error-vs-ratio study; writes `cfg.out` and returns the rows.

    One sin-ratio field and one exact-queue solve per (n, r); one
    bucket-queue solve per bucket count.  The bucket width and the bound
    use the analytic extremes (1, r) so rows line up with the ratio
    parameter rather than with sampling accidents.
    """
    rows = []
    for n in cfg.grid_sizes:
        spec = GridSpec(n)
        boundary = BoundarySet(spec, [(n, 0)])
        for r in cfg.ratios:
            field = sin_ratio_speed(r).build(spec)
            exact, _ = marcher.march(field, boundary, ExactQueue())
            for n_buckets in cfg.bucket_counts:
                report = check_error_bound(
                    field,
                    boundary,
                    n_buckets,
                    f_min=1.0,
                    f_max=float(r),
                    exact_solution=exact,
                )
                rows.append(
                    ErrorStudyRow(
                        float(r), n_buckets, n, report.max_rel_err, report.error_bound
                    )
                )
    header = [
        "# fastmarch error study",
        f"# grid_sizes={_fmt_seq(cfg.grid_sizes)} ratios={_fmt_seq(cfg.ratios)} "
        f"bucket_counts={_fmt_seq(cfg.bucket_counts)}",
        "# speed=sin-ratio boundary=(n,0) delta_source=analytic(f_min=1,f_max=r) "
        "prng=none seed=none",
        "r,buckets,n,max_rel_err,bound",
    ]
    lines = [
        ",".join(
            (repr(row.r), str(row.n_buckets), str(row.n),
             repr(row.max_rel_err), repr(row.bound))
        )
        for row in rows
    ]
    atomic_write(cfg.out, "\n".join(header + lines) + "\n")
    return rows


def run_scaling_study(cfg: ExperimentConfig) -> list[ScalingStudyRow]:
    """Work-counter scaling study; writes `cfg.out` and returns the rows.

    Per grid size: a seeded inv-uniform field, one exact-queue march and
    one bucket-queue march with buckets = n.  wall_time is informational;
    conclusions rest on the counters, which are machine-independent.
    """
    rows = []
    for n in cfg.grid_sizes:
        spec = GridSpec(n)
        boundary = BoundarySet(spec, [(n, 0)])
        field = inv_uniform_speed(cfg.seed, cfg.u_floor).build(spec)
        num_interior = spec.num_points - len(boundary)
        for kind in ("exact", "untidy"):
            if kind == "exact":
                queue = ExactQueue()
            else:
                queue = UntidyQueue(spec.h, field.f_min, n)
            start = perf_counter()
            _, metrics = marcher.march(field, boundary, queue)
            elapsed = perf_counter() - start
            rows.append(
                ScalingStudyRow(
                    n,
                    num_interior,
                    kind,
                    metrics.pops,
                    metrics.stale_skips,
                    metrics.bucket_traversals,
                    elapsed,
                )
            )
    header = [
        "# fastmarch scaling study",
        f"# grid_sizes={_fmt_seq(cfg.grid_sizes)} seed={cfg.seed} "
        f"u_floor={cfg.u_floor!r}",
        f"# speed=inv-uniform boundary=(n,0) buckets=n "
        f"delta_source=empirical-f_min prng={PRNG_ID}",
        "n,N,queue,pops,stale_skips,bucket_traversals,wall_time",
    ]
    lines = [
        ",".join(
            (str(row.n), str(row.num_interior), row.queue, str(row.pops),
             str(row.stale_skips), str(row.bucket_traversals),
             repr(row.wall_time))
        )
        for row in rows
    ]
    atomic_write(cfg.out, "\n".join(header + lines) + "\n")
    return rows


def _fmt_seq(values) -> str:
    return "[" + ";".join(str(v) for v in values) + "]"

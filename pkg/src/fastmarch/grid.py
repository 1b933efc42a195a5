"""Data model for the computational domain: mesh geometry, speed fields,
boundary sets, and grid functions.

The domain is the unit square meshed by (n+1) x (n+1) points at (i*h, j*h)
with h = 1/n.  Values are stored row-major with index i*(n+1)+j, so the
first axis of every array is the x index.  Grid functions use +inf as the
sentinel for unreached points and for reads outside the index range.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from ._util import atomic_write

INF = float("inf")


@dataclass(frozen=True)
class GridSpec:
    """Square Cartesian mesh geometry: n subdivisions per axis.

    The spacing h is derived from n (h = 1/n), never stored separately,
    so n*h == 1 holds by construction rather than by rounding luck.
    """

    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise ValueError(f"grid needs an integer n >= 2, got {self.n!r}")

    @property
    def h(self) -> float:
        return 1.0 / self.n

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n + 1, self.n + 1)

    @property
    def num_points(self) -> int:
        return (self.n + 1) ** 2

    def in_range(self, i: int, j: int) -> bool:
        return 0 <= i <= self.n and 0 <= j <= self.n


@dataclass(frozen=True)
class SpeedField:
    """Sampled speed values f[i, j] = F(i*h, j*h) with cached extremes.

    All samples are finite and strictly positive.  f_min and f_max are the
    empirical extremes over the samples; downstream quantities (bucket
    width, error bounds) use these unless a caller overrides them with
    analytic values.
    """

    spec: GridSpec
    f: np.ndarray
    f_min: float
    f_max: float

    def __post_init__(self):
        self.f.setflags(write=False)


@dataclass(frozen=True)
class BoundarySet:
    """Zero-value boundary points; the rest of the lattice is the interior.

    Boundary values are pinned to zero by the problem statement, so the set
    carries indices only.
    """

    spec: GridSpec
    points: frozenset[tuple[int, int]]

    def __init__(self, spec: GridSpec, points: Iterable[tuple[int, int]]):
        pts = frozenset((int(i), int(j)) for i, j in points)
        if not pts:
            raise ValueError("boundary set must be non-empty")
        for i, j in pts:
            if not spec.in_range(i, j):
                raise ValueError(
                    f"boundary point ({i}, {j}) outside [0, {spec.n}]^2"
                )
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return len(self.points)

    def interior_count(self) -> int:
        return self.spec.num_points - len(self.points)


@dataclass
class GridFunction:
    """Values over the (n+1)^2 lattice; +inf marks unreached points.

    Mutable and single-writer: one solver owns it while filling it in.
    Reads through `value` return +inf outside the index range.
    """

    spec: GridSpec
    values: np.ndarray

    @classmethod
    def filled(cls, spec: GridSpec, value: float = INF) -> "GridFunction":
        return cls(spec, np.full(spec.shape, value, dtype=np.float64))

    @classmethod
    def from_array(cls, spec: GridSpec, values: np.ndarray) -> "GridFunction":
        arr = np.asarray(values, dtype=np.float64)
        if arr.shape != spec.shape:
            raise ValueError(f"expected shape {spec.shape}, got {arr.shape}")
        finite = arr[np.isfinite(arr)]
        if finite.size and finite.min() < 0.0:
            raise ValueError("grid function values must be >= 0 or +inf")
        if np.isnan(arr).any():
            raise ValueError("grid function values must not be NaN")
        return cls(spec, arr)

    def value(self, i: int, j: int) -> float:
        if not self.spec.in_range(i, j):
            return INF
        return float(self.values[i, j])

    def copy(self) -> "GridFunction":
        return GridFunction(self.spec, self.values.copy())


def neighbor_values(T: GridFunction, i: int, j: int):
    """Values of T at the four axis neighbors of (i, j).

    Returns (left, right, down, up) = T at (i-1,j), (i+1,j), (i,j-1),
    (i,j+1), substituting +inf whenever the index leaves [0, n].
    """
    if not T.spec.in_range(i, j):
        raise IndexError(f"({i}, {j}) outside [0, {T.spec.n}]^2")
    n = T.spec.n
    v = T.values
    left = float(v[i - 1, j]) if i > 0 else INF
    right = float(v[i + 1, j]) if i < n else INF
    down = float(v[i, j - 1]) if j > 0 else INF
    up = float(v[i, j + 1]) if j < n else INF
    return left, right, down, up


def make_speed_field(
    spec: GridSpec, sampler: Callable[[float, float], float]
) -> SpeedField:
    """Sample F at every lattice point (i*h, j*h) and cache its extremes.

    Rejects non-positive or non-finite samples, naming the offending index.
    """
    n = spec.n
    h = spec.h
    f = np.empty(spec.shape, dtype=np.float64)
    for i in range(n + 1):
        x = i * h
        row = f[i]
        for j in range(n + 1):
            v = float(sampler(x, j * h))
            if not math.isfinite(v) or v <= 0.0:
                raise ValueError(
                    f"speed sample at index ({i}, {j}) is {v!r}; "
                    "speeds must be finite and > 0"
                )
            row[j] = v
    return SpeedField(spec, f, float(f.min()), float(f.max()))


def speed_field_from_array(spec: GridSpec, values: np.ndarray) -> SpeedField:
    """Wrap an existing sample array as a SpeedField, validating positivity."""
    arr = np.array(values, dtype=np.float64)
    if arr.shape != spec.shape:
        raise ValueError(f"expected shape {spec.shape}, got {arr.shape}")
    bad = ~(np.isfinite(arr) & (arr > 0.0))
    if bad.any():
        i, j = (int(k) for k in np.argwhere(bad)[0])
        raise ValueError(
            f"speed sample at index ({i}, {j}) is {arr[i, j]!r}; "
            "speeds must be finite and > 0"
        )
    return SpeedField(spec, arr, float(arr.min()), float(arr.max()))


# ---------------------------------------------------------------------------
# File formats.
#
# CSV: (n+1) rows x (n+1) columns of decimal reals, row i = x index i.
# Raw: little-endian IEEE-754 float64, row-major, no header.
# ---------------------------------------------------------------------------


def format_grid_csv(values: np.ndarray) -> str:
    rows = (",".join(repr(float(v)) for v in row) for row in values)
    return "\n".join(rows) + "\n"


def write_grid_csv(values: np.ndarray, path) -> None:
    atomic_write(path, format_grid_csv(values))


def write_grid_raw(values: np.ndarray, path) -> None:
    atomic_write(path, np.ascontiguousarray(values, dtype="<f8").tobytes())


def read_grid_csv(path) -> np.ndarray:
    rows = []
    with open(path, "r") as fh:
        for lineno, line in enumerate(fh):
            line = line.strip()
            if not line:
                continue
            try:
                rows.append([float(tok) for tok in line.split(",")])
            except ValueError as exc:
                raise ValueError(f"{path}: line {lineno + 1}: {exc}") from None
    if not rows:
        raise ValueError(f"{path}: empty grid file")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ValueError(f"{path}: ragged rows; expected {width} columns each")
    if len(rows) != width:
        raise ValueError(
            f"{path}: grid must be square, got {len(rows)} rows x {width} columns"
        )
    return np.array(rows, dtype=np.float64)


def read_speed_csv(path) -> SpeedField:
    """Load a speed field from the CSV grid format, validating positivity."""
    arr = read_grid_csv(path)
    n = arr.shape[0] - 1
    if n < 2:
        raise ValueError(f"{path}: grid needs at least 3 rows (n >= 2)")
    return speed_field_from_array(GridSpec(n), arr)

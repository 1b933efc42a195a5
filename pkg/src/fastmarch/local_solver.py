"""Per-point upwind update for the discrete eikonal equation.

The discrete equation at an interior point with value X, upwind neighbor
minima a (x axis) and b (y axis), spacing h and local speed f is

    max(X - a, 0)^2 + max(X - b, 0)^2 = (h/f)^2.

`solve_local` returns its unique solution, `hopf_lax` cross-checks it by
brute-force minimization of the equivalent variational form, and
`residual` evaluates how well a grid function satisfies the equation.
"""

from __future__ import annotations

import math

import numpy as np

from .grid import GridFunction, SpeedField, neighbor_values

INF = float("inf")


def solve_local(a: float, b: float, h: float, f: float) -> float:
    """Solve the one-point upwind quadratic.

    a and b are the minima of the two x neighbors and the two y neighbors
    (+inf when no finite neighbor exists on that axis).  With w = h/f:

      |a - b| >= w  ->  one-sided update  min(a, b) + w
      |a - b| <  w  ->  (a + b + sqrt(2 w^2 - (a - b)^2)) / 2

    The split keeps the max(.., 0) truncation explicit and avoids the
    cancellation-prone general quadratic formula.  The result is strictly
    greater than min(a, b) and at least max over the neighbors it uses.
    """
    if a > b:
        a, b = b, a
    if math.isinf(a):
        raise ValueError("local update needs at least one finite neighbor")
    w = h / f
    d = b - a
    if d >= w:
        return a + w
    return 0.5 * (a + b + math.sqrt(2.0 * w * w - d * d))


def hopf_lax(a: float, b: float, h: float, f: float, resolution: int) -> float:
    """Brute-force the variational form of the local update.

    Minimizes s*a + t*b + (h/f)*sqrt(s^2 + t^2) over s + t = 1, s, t >= 0
    on a uniform s grid with `resolution` subintervals.  Test oracle only;
    converges to solve_local as resolution grows.
    """
    if resolution < 2:
        raise ValueError(f"resolution must be >= 2, got {resolution}")
    if a > b:
        a, b = b, a
    if math.isinf(a):
        raise ValueError("local update needs at least one finite neighbor")
    w = h / f
    if math.isinf(b):
        # every t > 0 term is +inf; the minimum sits at t = 0
        return a + w
    s = np.linspace(0.0, 1.0, resolution + 1)
    t = 1.0 - s
    return float(np.min(s * a + t * b + w * np.hypot(s, t)))


def residual(T: GridFunction, F: SpeedField, i: int, j: int) -> float:
    """Upwind gradient-norm approximation times the local speed.

    Equals 1 at every interior point of an exact solution of the discrete
    equation, and scales linearly under T -> theta*T (positive homogeneity).
    """
    t = float(T.values[i, j])
    if not math.isfinite(t):
        raise ValueError(f"residual undefined at ({i}, {j}): value is {t!r}")
    left, right, down, up = neighbor_values(T, i, j)
    h = T.spec.h
    gx = max(t - left, t - right, 0.0) / h
    gy = max(t - down, t - up, 0.0) / h
    return float(F.f[i, j]) * math.hypot(gx, gy)


def residual_grid(T: GridFunction, F: SpeedField) -> np.ndarray:
    """Vectorized `residual` over the whole lattice.

    Requires all values finite (solved grids are).  Out-of-range neighbors
    contribute +inf, i.e. nothing, exactly as in the scalar version.
    """
    v = T.values
    if not np.isfinite(v).all():
        raise ValueError("residual_grid requires a fully finite grid function")
    m = v.shape[0]
    padded = np.full((m + 2, m + 2), INF)
    padded[1:-1, 1:-1] = v
    h = T.spec.h
    gx = np.maximum(
        np.maximum(v - padded[:-2, 1:-1], v - padded[2:, 1:-1]), 0.0
    ) / h
    gy = np.maximum(
        np.maximum(v - padded[1:-1, :-2], v - padded[1:-1, 2:]), 0.0
    ) / h
    return F.f * np.hypot(gx, gy)

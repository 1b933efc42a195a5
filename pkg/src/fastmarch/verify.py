"""Independent oracle and property checkers for the marching solver.

The sweeping oracle recomputes the discrete solution by Gauss-Seidel
iteration in alternating orders, sharing nothing with the marching loop
except the scalar local update.  The checkers cover the properties the
solver is supposed to have: the narrow-band width bound, the discrete
comparison principle, and the relative-error bound of the bucket-queue
variant against the exact-queue solution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import marcher
from .grid import INF, BoundarySet, GridFunction, SpeedField
from .local_solver import residual_grid, solve_local
from .queue_exact import ExactQueue
from .queue_untidy import UntidyQueue


class VerificationError(Exception):
    """A checked property failed (or an oracle could not be computed)."""


class HypothesisError(VerificationError):
    """A checker's precondition failed; the property itself was not judged."""


def sweep_oracle(
    field: SpeedField,
    boundary: BoundarySet,
    tol: float = 1e-14,
    max_cycles: int | None = None,
) -> GridFunction:
    """Fixed-point solve by repeated sweeping; independent of the marcher.

    Starts from 0 on the boundary and +inf elsewhere, then applies the
    monotone update T <- min(T, local solve) over all interior points in
    the four alternating index orders until a full four-sweep cycle
    changes nothing by tol or more.  The fixed point solves the discrete
    equation, so it must match the exact-queue march.
    """
    spec = field.spec
    if boundary.spec != spec:
        raise ValueError("boundary and speed field use different grid specs")
    if tol <= 0.0:
        raise ValueError(f"tol must be > 0, got {tol!r}")
    n = spec.n
    m = n + 1
    h = spec.h
    f = field.f.reshape(-1).tolist()
    T = [INF] * (m * m)
    interior = bytearray([1]) * (m * m)
    for i, j in boundary.points:
        p = i * m + j
        T[p] = 0.0
        interior[p] = 0

    forward = range(m)
    backward = range(n, -1, -1)
    orders = (
        (forward, forward),
        (forward, backward),
        (backward, forward),
        (backward, backward),
    )
    if max_cycles is None:
        max_cycles = 10 * (n + 1)

    for _ in range(max_cycles):
        change = 0.0
        for i_order, j_order in orders:
            for i in i_order:
                base = i * m
                for j in j_order:
                    p = base + j
                    if not interior[p]:
                        continue
                    a = T[p - m] if i > 0 else INF
                    if i < n and T[p + m] < a:
                        a = T[p + m]
                    b = T[p - 1] if j > 0 else INF
                    if j < n and T[p + 1] < b:
                        b = T[p + 1]
                    if a == INF and b == INF:
                        continue
                    x = solve_local(a, b, h, f[p])
                    old = T[p]
                    if x < old:
                        T[p] = x
                        d = old - x
                        if d > change:
                            change = d
        if change < tol:
            values = np.array(T, dtype=np.float64).reshape(m, m)
            return GridFunction(spec, values)
    raise VerificationError(
        f"sweeping did not converge to {tol} within {max_cycles} cycles"
    )


def _omega_mask(boundary: BoundarySet) -> np.ndarray:
    mask = np.ones(boundary.spec.shape, dtype=bool)
    for i, j in boundary.points:
        mask[i, j] = False
    return mask


def check_comparison(
    S: GridFunction,
    T: GridFunction,
    field: SpeedField,
    boundary: BoundarySet,
    hyp_tol: float = 1e-10,
    tol: float = 1e-12,
) -> bool:
    """Discrete comparison principle.

    Requires S to be a discrete subsolution (residual <= 1 + hyp_tol) and
    T a supersolution (residual >= 1 - hyp_tol) at every interior point;
    violated hypotheses raise HypothesisError naming the point.  Returns
    whether the interior excess max (S - T)+ stays within tol of the
    boundary excess.
    """
    spec = field.spec
    for g in (S, T):
        if g.spec != spec:
            raise ValueError("grid functions and speed field use different specs")
    if boundary.spec != spec:
        raise ValueError("boundary and speed field use different grid specs")
    omega = _omega_mask(boundary)
    for name, g in (("S", S), ("T", T)):
        if not np.isfinite(g.values).all():
            i, j = (int(k) for k in np.argwhere(~np.isfinite(g.values))[0])
            raise HypothesisError(f"{name} is not finite at ({i}, {j})")
    r_sub = residual_grid(S, field)
    bad = (r_sub > 1.0 + hyp_tol) & omega
    if bad.any():
        i, j = (int(k) for k in np.argwhere(bad)[0])
        raise HypothesisError(
            f"subsolution hypothesis fails at ({i}, {j}): "
            f"residual(S) = {r_sub[i, j]!r} > 1 + {hyp_tol}"
        )
    r_sup = residual_grid(T, field)
    bad = (r_sup < 1.0 - hyp_tol) & omega
    if bad.any():
        i, j = (int(k) for k in np.argwhere(bad)[0])
        raise HypothesisError(
            f"supersolution hypothesis fails at ({i}, {j}): "
            f"residual(T) = {r_sup[i, j]!r} < 1 - {hyp_tol}"
        )
    excess = np.maximum(S.values - T.values, 0.0)
    interior_max = float(excess[omega].max()) if omega.any() else 0.0
    boundary_max = float(excess[~omega].max())
    return interior_max <= boundary_max + tol


@dataclass(frozen=True)
class ErrorReport:
    """Outcome of one exact-vs-bucket-queue error comparison."""

    n: int
    n_buckets: int
    f_ratio: float
    max_rel_err: float
    error_bound: float
    monotone_ok: bool

    CSV_HEADER = "n,buckets,f_ratio,max_rel_err,error_bound,monotone_ok"

    def csv_row(self) -> str:
        return ",".join(
            (
                str(self.n),
                str(self.n_buckets),
                repr(self.f_ratio),
                repr(self.max_rel_err),
                repr(self.error_bound),
                "true" if self.monotone_ok else "false",
            )
        )


def check_error_bound(
    field: SpeedField,
    boundary: BoundarySet,
    n_buckets: int,
    f_min: float | None = None,
    f_max: float | None = None,
    exact_solution: GridFunction | None = None,
    approx_solution: GridFunction | None = None,
    slack: float = 1e-12,
) -> ErrorReport:
    """Compare the bucket-queue solution against the exact-queue one.

    Asserts the approximate values dominate the exact ones pointwise and
    that the interior maximum of (approx - exact)/approx stays within
    sqrt(2) * (f_max/f_min) / n_buckets, both up to `slack` of floating
    noise.  f_min/f_max default to the field's empirical extremes; pass
    analytic values to match a parameterized study.  Precomputed solutions
    may be passed in to skip re-running a march; the approximate one must
    come from a bucket queue built with the same f_min and n_buckets.
    """
    spec = field.spec
    fmin = field.f_min if f_min is None else float(f_min)
    fmax = field.f_max if f_max is None else float(f_max)
    if exact_solution is None:
        exact_solution, _ = marcher.march(field, boundary, ExactQueue())
    if approx_solution is None:
        approx_solution, _ = marcher.march(
            field, boundary, UntidyQueue(spec.h, fmin, n_buckets)
        )
    omega = _omega_mask(boundary)
    diff = approx_solution.values - exact_solution.values
    worst = float(diff[omega].min()) if omega.any() else 0.0
    if worst < -slack:
        flat = np.where(omega, diff, np.inf)
        i, j = (int(k) for k in np.unravel_index(np.argmin(flat), flat.shape))
        raise VerificationError(
            f"approximate solution below exact at ({i}, {j}): "
            f"{approx_solution.values[i, j]!r} < {exact_solution.values[i, j]!r}"
        )
    bound = math.sqrt(2.0) * (fmax / fmin) / n_buckets
    if omega.any():
        rel = diff[omega] / approx_solution.values[omega]
        max_rel = max(float(rel.max()), 0.0)
    else:
        max_rel = 0.0
    if max_rel > bound + slack:
        raise VerificationError(
            f"relative error {max_rel!r} exceeds bound {bound!r} "
            f"(ratio {fmax / fmin!r}, buckets {n_buckets})"
        )
    return ErrorReport(
        n=spec.n,
        n_buckets=n_buckets,
        f_ratio=fmax / fmin,
        max_rel_err=max_rel,
        error_bound=bound,
        monotone_ok=True,
    )


def check_band_trace(
    trace,
    h: float,
    f_min: float,
    delta: float | None = None,
    untidy: bool = False,
    slack: float = 1e-14,
) -> bool:
    """Check every recorded (min, max) band spread against its width bound.

    Exact queue: max - min <= h/f_min (plus float slack).  Untidy queue:
    strictly below h/f_min + delta.
    """
    limit = h / f_min
    if untidy:
        if delta is None:
            raise ValueError("the untidy band check needs the bucket width delta")
        return all(mx - mn < limit + delta for mn, mx in trace)
    return all(mx - mn <= limit + slack for mn, mx in trace)

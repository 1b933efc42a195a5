"""Fast marching loop, generic over the priority-queue contract.

One cycle accepts the (approximately) smallest trial point, then retags
and recomputes its non-accepted neighbors from accepted values only.  The
queue decides what "smallest" means: the exact heap gives the classic
method, the untidy bucket queue gives the linear-time variant with a
bounded acceptance-order error.

Queues store (point, key-at-insert-time) and are never edited in place:
value decreases append a fresh copy per the queue's policy, and popping a
point that is already accepted just skips it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from heapq import heappop, heappush

import numpy as np

from .grid import INF, BoundarySet, GridFunction, SpeedField
from .local_solver import solve_local

FAR, TRIAL, KNOWN = 0, 1, 2


@dataclass
class RunMetrics:
    """Instrumentation counters for one march.

    pops counts every queue pop (stale ones included); cycles counts
    acceptances and equals the interior size at termination.  insertions
    counts every stored copy, reinsertions the subset caused by key
    decreases.  Per-point insertion stats back the bucket-queue cap check.
    """

    pops: int = 0
    stale_skips: int = 0
    insertions: int = 0
    reinsertions: int = 0
    bucket_traversals: int = 0
    cycles: int = 0
    max_point_insertions: int = 0
    mean_point_insertions: float = 0.0


@dataclass
class MarchState:
    """Tags (far/trial/known), current values, and acceptance progress."""

    tags: np.ndarray  # uint8, FAR/TRIAL/KNOWN
    T: GridFunction
    accepted_count: int


def _init_flat(field: SpeedField, boundary: BoundarySet, queue):
    """Shared setup: boundary known at 0, its interior neighbors trial.

    Works on flat row-major lists (index i*(n+1)+j) for speed; the flat
    order is also lexicographic (i, j) order, which keeps initialization
    deterministic.
    """
    spec = field.spec
    if boundary.spec != spec:
        raise ValueError("boundary and speed field use different grid specs")
    if len(queue):
        raise ValueError("march needs a fresh, empty queue")
    n = spec.n
    m = n + 1
    h = spec.h
    f = field.f.reshape(-1).tolist()
    T = [INF] * (m * m)
    tags = bytearray(m * m)
    per_point = bytearray(m * m)

    gamma = sorted(i * m + j for i, j in boundary.points)
    for p in gamma:
        tags[p] = KNOWN
        T[p] = 0.0

    candidates = set()
    for p in gamma:
        i, j = divmod(p, m)
        if i > 0 and tags[p - m] != KNOWN:
            candidates.add(p - m)
        if i < n and tags[p + m] != KNOWN:
            candidates.add(p + m)
        if j > 0 and tags[p - 1] != KNOWN:
            candidates.add(p - 1)
        if j < n and tags[p + 1] != KNOWN:
            candidates.add(p + 1)

    for q in sorted(candidates):
        i, j = divmod(q, m)
        a = INF
        if i > 0 and tags[q - m] == KNOWN:
            a = T[q - m]
        if i < n and tags[q + m] == KNOWN and T[q + m] < a:
            a = T[q + m]
        b = INF
        if j > 0 and tags[q - 1] == KNOWN:
            b = T[q - 1]
        if j < n and tags[q + 1] == KNOWN and T[q + 1] < b:
            b = T[q + 1]
        x = solve_local(a, b, h, f[q])
        T[q] = x
        tags[q] = TRIAL
        queue.insert(q, x)
        per_point[q] += 1

    return n, m, h, f, T, tags, gamma, per_point


def initialize(field: SpeedField, boundary: BoundarySet, queue) -> MarchState:
    """Set up a march: boundary points known with value 0, every interior
    neighbor trial with its one-step update already in the queue."""
    _, m, _, _, T, tags, _, _ = _init_flat(field, boundary, queue)
    tags_arr = np.frombuffer(bytes(tags), dtype=np.uint8).reshape(m, m).copy()
    values = np.array(T, dtype=np.float64).reshape(m, m)
    return MarchState(tags=tags_arr, T=GridFunction(field.spec, values), accepted_count=0)


def narrow_band_range(state: MarchState) -> tuple[float, float]:
    """(min, max) of the current values over trial-tagged points."""
    vals = state.T.values[state.tags == TRIAL]
    if vals.size == 0:
        raise ValueError("narrow band is empty")
    return float(vals.min()), float(vals.max())


def march(
    field: SpeedField,
    boundary: BoundarySet,
    queue,
    band_trace: list | None = None,
) -> tuple[GridFunction, RunMetrics]:
    """Run the full marching loop and return the solution plus counters.

    `queue` must be fresh; with an ExactQueue the output is the unique
    solution of the discrete equation.  If `band_trace` is a list, the
    (min, max) spread of trial values is appended once per acceptance,
    measured just before the accepted point leaves the band.
    """
    n, m, h, f, T, tags, gamma, per_point = _init_flat(field, boundary, queue)
    n_omega = m * m - len(gamma)

    track = band_trace is not None
    if track:
        min_heap: list = []
        max_heap: list = []
        for q in range(m * m):
            if tags[q] == TRIAL:
                heappush(min_heap, (T[q], q))
                heappush(max_heap, (-T[q], q))

    pop = queue.pop_min
    insert = queue.insert
    reinsert = queue.reinsert_if_moved
    sqrt = math.sqrt
    pops = stale_skips = cycles = 0

    def update(q: int, i: int, j: int) -> None:
        # recompute the trial value of q from accepted neighbors only
        a = INF
        if i > 0 and tags[q - m] == KNOWN:
            a = T[q - m]
        if i < n and tags[q + m] == KNOWN and T[q + m] < a:
            a = T[q + m]
        b = INF
        if j > 0 and tags[q - 1] == KNOWN:
            b = T[q - 1]
        if j < n and tags[q + 1] == KNOWN and T[q + 1] < b:
            b = T[q + 1]
        if a > b:
            a, b = b, a
        w = h / f[q]
        d = b - a
        x = a + w if d >= w else 0.5 * (a + b + sqrt(2.0 * w * w - d * d))
        if tags[q] == FAR:
            tags[q] = TRIAL
            T[q] = x
            insert(q, x)
            per_point[q] += 1
            if track:
                heappush(min_heap, (x, q))
                heappush(max_heap, (-x, q))
        else:
            old = T[q]
            if x < old:
                T[q] = x
                if reinsert(q, old, x):
                    per_point[q] += 1
                if track:
                    heappush(min_heap, (x, q))
                    heappush(max_heap, (-x, q))

    while True:
        item = pop()
        if item is None:
            break
        pops += 1
        p, _key = item
        if tags[p] == KNOWN:
            stale_skips += 1
            continue
        if track:
            while True:
                v, q = min_heap[0]
                if tags[q] == TRIAL and T[q] == v:
                    band_min = v
                    break
                heappop(min_heap)
            while True:
                v, q = max_heap[0]
                if tags[q] == TRIAL and T[q] == -v:
                    band_max = -v
                    break
                heappop(max_heap)
            band_trace.append((band_min, band_max))
        tags[p] = KNOWN
        cycles += 1
        i, j = divmod(p, m)
        if i > 0 and tags[p - m] != KNOWN:
            update(p - m, i - 1, j)
        if i < n and tags[p + m] != KNOWN:
            update(p + m, i + 1, j)
        if j > 0 and tags[p - 1] != KNOWN:
            update(p - 1, i, j - 1)
        if j < n and tags[p + 1] != KNOWN:
            update(p + 1, i, j + 1)

    assert cycles == n_omega, f"accepted {cycles} of {n_omega} interior points"

    metrics = RunMetrics(
        pops=pops,
        stale_skips=stale_skips,
        insertions=queue.insertions,
        reinsertions=queue.reinsertions,
        bucket_traversals=queue.bucket_traversals,
        cycles=cycles,
    )
    if n_omega:
        metrics.max_point_insertions = max(per_point)
        metrics.mean_point_insertions = queue.insertions / n_omega

    values = np.array(T, dtype=np.float64).reshape(m, m)
    return GridFunction(field.spec, values), metrics

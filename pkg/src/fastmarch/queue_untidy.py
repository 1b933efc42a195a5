"""Untidy bucket priority queue.

A circular array of n_buckets + 1 FIFO buckets stores (point, key) pairs
quantized by the bucket width delta = h / (f_min * n_buckets): a key lands
in bucket floor(key/delta) mod (n_buckets + 1).  Popping returns the head
of the lowest occupied bucket, scanning cyclically, so any key within
delta of the true minimum may come out first.  That bounded untidiness is
the whole point: insert and pop are O(1) amortized over a march.

Stale copies are never removed here; the caller skips points it has
already accepted.  If a recomputed key stays inside its old bucket the
queue is not touched at all.
"""

from __future__ import annotations

import math
from collections import deque


class UntidyQueue:
    def __init__(self, h: float, f_min: float, n_buckets: int):
        if n_buckets < 1:
            raise ValueError(
                f"need at least one bucket interval, got n_buckets={n_buckets}"
            )
        if not (h > 0.0 and f_min > 0.0):
            raise ValueError(f"h and f_min must be > 0, got {h!r}, {f_min!r}")
        self.n_buckets = int(n_buckets)
        self.delta = h / (f_min * n_buckets)
        self.buckets = [deque() for _ in range(self.n_buckets + 1)]
        self.s = 0  # index of the bucket currently holding the smallest keys
        self.live_count = 0
        self.insertions = 0
        self.reinsertions = 0
        self.bucket_traversals = 0
        self._floor_key = 0.0  # largest key popped so far; see insert()

    def __len__(self) -> int:
        return self.live_count

    def bucket_index(self, key: float) -> int:
        if not math.isfinite(key) or key < 0.0:
            raise ValueError(f"queue key must be finite and >= 0, got {key!r}")
        return int(key / self.delta) % (self.n_buckets + 1)

    def insert(self, point, key: float) -> None:
        """Append (point, key) at the FIFO tail of its bucket."""
        r = self.bucket_index(key)
        # Tripwire for callers that violate the band-width contract: a key
        # more than a full window above the most recent pop would alias with
        # a lower bucket after the modulus.  The +1 absorbs float rounding
        # at exact bucket boundaries.
        assert (
            int(key / self.delta) - int(self._floor_key / self.delta)
            <= self.n_buckets + 1
        ), f"key {key!r} aliases past the live window (delta={self.delta!r})"
        self.buckets[r].append((point, key))
        self.live_count += 1
        self.insertions += 1

    def pop_min(self):
        """Pop the head of the lowest occupied bucket, or None when empty.

        Advances the scan index cyclically over empty buckets, counting one
        traversal per step; termination on an empty queue is O(1) via the
        live counter.
        """
        if self.live_count == 0:
            return None
        buckets = self.buckets
        s = self.s
        while not buckets[s]:
            s = (s + 1) % (self.n_buckets + 1)
            self.bucket_traversals += 1
        self.s = s
        point, key = buckets[s].popleft()
        self.live_count -= 1
        if key > self._floor_key:
            self._floor_key = key
        return point, key

    def reinsert_if_moved(self, point, old_key: float, new_key: float) -> bool:
        """Reinsert only when the decreased key lands in a different bucket.

        The old copy is left in place as a stale entry.  Returns whether an
        insertion happened.
        """
        if new_key > old_key:
            raise ValueError(
                f"keys only decrease: old {old_key!r} -> new {new_key!r}"
            )
        if self.bucket_index(new_key) == self.bucket_index(old_key):
            return False
        self.insert(point, new_key)
        self.reinsertions += 1
        return True

    def iter_entries(self):
        """Yield (bucket_index, point, key) for every stored copy (debug aid)."""
        for r, bucket in enumerate(self.buckets):
            for point, key in bucket:
                yield r, point, key

"""Exact min-priority queue with lazy deletion.

Backed by a binary heap.  Decrease-key is reinsertion: the stale higher
copy stays in the heap and the marcher skips it at pop time, so the exact
and untidy queues drive identical marcher code paths.
"""

from __future__ import annotations

import heapq
import math
from typing import Callable, Optional


class ExactQueue:
    """Heap of (key, tie_rank, point) entries, smallest key first.

    Ties on the key are broken by `tie_rank(point)`; the default is the
    point itself, i.e. lexicographic (i, j) order.  Output of a march must
    not depend on this choice, which the tests assert by swapping it out.
    """

    bucket_traversals = 0  # heap scans no buckets; kept for the shared contract

    def __init__(self, tie_rank: Optional[Callable] = None):
        self._heap: list = []
        self._tie_rank = tie_rank if tie_rank is not None else lambda p: p
        self.insertions = 0
        self.reinsertions = 0

    def __len__(self) -> int:
        return len(self._heap)

    def insert(self, point, key: float) -> None:
        if not math.isfinite(key) or key < 0.0:
            raise ValueError(f"queue key must be finite and >= 0, got {key!r}")
        heapq.heappush(self._heap, (key, self._tie_rank(point), point))
        self.insertions += 1

    def pop_min(self):
        """Remove and return (point, key) with the smallest live key, or None."""
        if not self._heap:
            return None
        key, _, point = heapq.heappop(self._heap)
        return point, key

    def reinsert_if_moved(self, point, old_key: float, new_key: float) -> bool:
        """Record a decreased key.

        The exact queue has no quantization: any strict decrease is a move,
        so it reinserts and leaves the old copy to be skipped as stale.
        """
        if new_key > old_key:
            raise ValueError(
                f"keys only decrease: old {old_key!r} -> new {new_key!r}"
            )
        if new_key == old_key:
            return False
        self.insert(point, new_key)
        self.reinsertions += 1
        return True

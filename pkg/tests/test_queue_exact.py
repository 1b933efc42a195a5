import random

import pytest

from fastmarch.queue_exact import ExactQueue


class NaiveMinQueue:
    """Linear-scan reference with the same (key, point) ordering."""

    def __init__(self):
        self.items = []

    def insert(self, point, key):
        self.items.append((key, point))

    def pop_min(self):
        if not self.items:
            return None
        best = min(self.items)
        self.items.remove(best)
        return best[1], best[0]


class TestBasics:
    def test_single_entry_roundtrip(self):
        q = ExactQueue()
        q.insert((1, 2), 0.5)
        assert q.pop_min() == ((1, 2), 0.5)
        assert q.pop_min() is None

    def test_sorted_pop_order(self):
        q = ExactQueue()
        for key in (3.0, 1.0, 2.0):
            q.insert(("p", key), key)
        assert [q.pop_min()[1] for _ in range(3)] == [1.0, 2.0, 3.0]

    def test_equal_keys_break_lexicographically(self):
        q = ExactQueue()
        q.insert((1, 0), 0.25)
        q.insert((0, 1), 0.25)
        assert q.pop_min()[0] == (0, 1)
        assert q.pop_min()[0] == (1, 0)

    def test_custom_tie_rank(self):
        q = ExactQueue(tie_rank=lambda p: (-p[0], -p[1]))
        q.insert((1, 0), 0.25)
        q.insert((0, 1), 0.25)
        assert q.pop_min()[0] == (1, 0)

    @pytest.mark.parametrize("key", [float("inf"), float("nan"), -0.25])
    def test_bad_keys_rejected(self, key):
        q = ExactQueue()
        with pytest.raises(ValueError):
            q.insert((0, 0), key)

    def test_pops_are_nondecreasing(self):
        rng = random.Random(5)
        q = ExactQueue()
        for _ in range(500):
            q.insert((0, 0), rng.uniform(0, 10))
        keys = []
        while (item := q.pop_min()) is not None:
            keys.append(item[1])
        assert keys == sorted(keys)


class TestReinsertPolicy:
    def test_unchanged_key_is_not_reinserted(self):
        q = ExactQueue()
        q.insert((0, 0), 1.0)
        assert q.reinsert_if_moved((0, 0), 1.0, 1.0) is False
        assert len(q) == 1

    def test_decrease_reinserts_and_leaves_stale_copy(self):
        q = ExactQueue()
        q.insert((0, 0), 1.0)
        assert q.reinsert_if_moved((0, 0), 1.0, 0.25) is True
        assert len(q) == 2
        assert q.reinsertions == 1
        assert q.pop_min() == ((0, 0), 0.25)
        assert q.pop_min() == ((0, 0), 1.0)  # stale copy, caller's job to skip

    def test_increase_rejected(self):
        q = ExactQueue()
        with pytest.raises(ValueError):
            q.reinsert_if_moved((0, 0), 1.0, 2.0)


def test_trace_equivalence_with_naive_oracle():
    # >= 1e5 operations of interleaved inserts and pops must match a
    # linear-scan queue exactly, including tie order
    rng = random.Random(123)
    q = ExactQueue()
    ref = NaiveMinQueue()
    live = 0
    ops = 0
    while ops < 120_000:
        if live and (rng.random() < 0.5 or live > 300):
            assert q.pop_min() == ref.pop_min()
            live -= 1
        else:
            point = (rng.randrange(64), rng.randrange(64))
            key = round(rng.uniform(0, 4), 2)  # coarse keys force frequent ties
            q.insert(point, key)
            ref.insert(point, key)
            live += 1
        ops += 1
    while (item := q.pop_min()) is not None:
        assert item == ref.pop_min()
    assert ref.pop_min() is None

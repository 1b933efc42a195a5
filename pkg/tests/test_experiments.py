import math

import numpy as np
import pytest

import fastmarch as fm
from fastmarch.experiments import (
    DEFAULT_U_FLOOR,
    ExperimentConfig,
    PRNG_ID,
    constant_speed,
    inv_uniform_speed,
    run_error_study,
    run_scaling_study,
    sin_ratio_speed,
    speed_entry,
)


class TestSpeedCatalog:
    def test_constant(self):
        entry = constant_speed(2.5)
        field = entry.build(fm.GridSpec(4))
        assert np.all(field.f == 2.5)
        with pytest.raises(ValueError):
            constant_speed(0.0)

    def test_sin_ratio_empirical_extremes_inside_analytic(self):
        for n in (10, 64, 100):
            for r in (2.0, 8.0, 64.0):
                field = sin_ratio_speed(r).build(fm.GridSpec(n))
                assert field.f_min >= 1.0 - 1e-9
                assert field.f_max <= r + 1e-9

    def test_sin_ratio_one_is_constant(self):
        field = sin_ratio_speed(1.0).build(fm.GridSpec(6))
        assert np.all(field.f == 1.0)
        with pytest.raises(ValueError):
            sin_ratio_speed(0.5)

    def test_inv_uniform_range_and_determinism(self):
        spec = fm.GridSpec(24)
        a = inv_uniform_speed(7).build(spec)
        b = inv_uniform_speed(7).build(spec)
        c = inv_uniform_speed(8).build(spec)
        assert np.array_equal(a.f, b.f)
        assert not np.array_equal(a.f, c.f)
        assert a.f_min >= 1.0
        assert a.f_max < 1.0 / DEFAULT_U_FLOOR

    def test_inv_uniform_u_floor_validated(self):
        with pytest.raises(ValueError):
            inv_uniform_speed(1, u_floor=0.0)
        with pytest.raises(ValueError):
            inv_uniform_speed(1, u_floor=1.5)

    def test_lookup_by_name(self):
        entry = speed_entry("sin-ratio", r=4.0)
        assert entry.name == "sin-ratio"
        assert entry.params["r"] == 4.0
        with pytest.raises(ValueError, match="unknown speed"):
            speed_entry("warp")


class TestExperimentConfig:
    def test_validation(self):
        with pytest.raises(ValueError):
            ExperimentConfig(grid_sizes=())
        with pytest.raises(ValueError):
            ExperimentConfig(grid_sizes=(10,), bucket_counts=(0,))
        with pytest.raises(ValueError):
            ExperimentConfig(grid_sizes=(10,), ratios=(0.5,))


class TestErrorStudy:
    def test_rows_and_csv(self, tmp_path):
        out = tmp_path / "err.csv"
        cfg = ExperimentConfig(
            grid_sizes=(16,), bucket_counts=(2, 8), ratios=(1.0, 4.0),
            out=str(out),
        )
        rows = run_error_study(cfg)
        assert len(rows) == 4
        for row in rows:
            assert row.max_rel_err <= row.bound + 1e-12
            assert row.bound == pytest.approx(
                math.sqrt(2) * row.r / row.n_buckets, rel=1e-15
            )
        text = out.read_text()
        lines = text.splitlines()
        comments = [ln for ln in lines if ln.startswith("#")]
        assert comments and "delta_source=analytic" in text
        assert "r,buckets,n,max_rel_err,bound" in lines
        assert len([ln for ln in lines if not ln.startswith("#")]) == 1 + 4

    def test_byte_identical_reruns(self, tmp_path):
        outs = []
        for name in ("a.csv", "b.csv"):
            out = tmp_path / name
            cfg = ExperimentConfig(
                grid_sizes=(12,), bucket_counts=(4,), ratios=(2.0,),
                out=str(out),
            )
            run_error_study(cfg)
            outs.append(out.read_bytes())
        assert outs[0] == outs[1]


class TestScalingStudy:
    def test_rows_and_csv(self, tmp_path):
        out = tmp_path / "scale.csv"
        cfg = ExperimentConfig(grid_sizes=(8, 16), seed=3, out=str(out))
        rows = run_scaling_study(cfg)
        assert len(rows) == 4
        kinds = {(row.n, row.queue) for row in rows}
        assert kinds == {(8, "exact"), (8, "untidy"), (16, "exact"), (16, "untidy")}
        for row in rows:
            assert row.num_interior == (row.n + 1) ** 2 - 1
            assert row.pops >= row.num_interior
            assert row.wall_time > 0.0
            if row.queue == "exact":
                assert row.bucket_traversals == 0
            else:
                assert row.bucket_traversals > 0
        text = out.read_text()
        assert PRNG_ID in text
        assert "n,N,queue,pops,stale_skips,bucket_traversals,wall_time" in text

    def test_counters_deterministic_wall_time_excluded(self, tmp_path):
        def counters(path):
            rows = []
            for line in path.read_text().splitlines():
                if line.startswith("#") or line.startswith("n,"):
                    continue
                rows.append(line.rsplit(",", 1)[0])  # drop wall_time
            return rows

        a = tmp_path / "a.csv"
        b = tmp_path / "b.csv"
        run_scaling_study(ExperimentConfig(grid_sizes=(8, 12), seed=5, out=str(a)))
        run_scaling_study(ExperimentConfig(grid_sizes=(8, 12), seed=5, out=str(b)))
        assert counters(a) == counters(b)

    def test_seed_changes_counters(self, tmp_path):
        a = run_scaling_study(
            ExperimentConfig(grid_sizes=(12,), seed=1, out=str(tmp_path / "a.csv"))
        )
        b = run_scaling_study(
            ExperimentConfig(grid_sizes=(12,), seed=2, out=str(tmp_path / "b.csv"))
        )
        assert [r.pops for r in a] != [r.pops for r in b]

"""Rollout mechanics and error metrics."""

import numpy as np
import pytest

from conftest import tiny_run_config
from mi2a.autodiff import Tensor
from mi2a.datasets import SnapshotDataset
from mi2a.evaluation import (
    comparison_table,
    evaluate_checkpoint,
    horizon_mse,
    metrics,
    rollout,
    write_metrics_csv,
    write_table_csv,
)
from mi2a.training import train


class IdentityModel:
    """Stub returning its input window unchanged."""

    def encode(self, x):
        return Tensor(np.asarray(x))

    def evolve(self, z):
        return Tensor(z.data), None

    def decode(self, z):
        return Tensor(z.data)


class TestMetrics:
    def test_perfect_prediction_all_zero(self):
        x = np.random.default_rng(0).random((5, 16))
        m = metrics(x, x)
        assert m.avg_mse == m.avg_mae == m.avg_linf == 0.0

    def test_constant_offset(self):
        x = np.random.default_rng(1).random((4, 8))
        m = metrics(x + 1.0, x)
        np.testing.assert_allclose(m.mse, 1.0, atol=1e-14)
        np.testing.assert_allclose(m.mae, 1.0, atol=1e-14)
        np.testing.assert_allclose(m.linf, 1.0, atol=1e-14)

    def test_brute_force_double_loop_oracle(self):
        rng = np.random.default_rng(2)
        pred, truth = rng.random((3, 7)), rng.random((3, 7))
        m = metrics(pred, truth)
        for j in range(3):
            se = ae = mx = 0.0
            for i in range(7):
                d = pred[j, i] - truth[j, i]
                se += d * d
                ae += abs(d)
                mx = max(mx, abs(d))
            assert m.mse[j] == pytest.approx(se / 7, abs=1e-14)
            assert m.mae[j] == pytest.approx(ae / 7, abs=1e-14)
            assert m.linf[j] == pytest.approx(mx, abs=1e-14)

    def test_time_average_is_arithmetic_mean(self):
        rng = np.random.default_rng(3)
        m = metrics(rng.random((6, 5)), rng.random((6, 5)))
        assert m.avg_mse == pytest.approx(float(np.mean(m.mse)), rel=0, abs=0)
        assert m.avg_linf == pytest.approx(float(np.mean(m.linf)), rel=0, abs=0)

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            metrics(np.ones((2, 3)), np.ones((2, 4)))


class TestRollout:
    def test_identity_model_tiles_the_seed(self):
        seed = np.random.default_rng(4).random((3, 8))
        res = rollout(IdentityModel(), seed, n_horizons=4)
        assert res.ok and res.horizons_completed == 4
        assert res.trajectory.shape == (12, 8)
        for h in range(4):
            np.testing.assert_array_equal(res.trajectory[res.horizon_slice(h)], seed)

    def test_single_horizon_is_one_forward_pass(self):
        seed = np.ones((3, 8))
        res = rollout(IdentityModel(), seed, n_horizons=1)
        assert res.trajectory.shape == (3, 8)

    def test_nineteen_horizons_of_ten_steps_reach_190(self):
        seed = np.zeros((10, 4))
        res = rollout(IdentityModel(), seed, n_horizons=19)
        assert res.trajectory.shape[0] == 190
        assert res.horizon_slice(18) == slice(180, 190)

    def test_nonfinite_prediction_truncates_and_flags(self):
        class ExplodingModel(IdentityModel):
            def __init__(self):
                self.calls = 0

            def decode(self, z):
                self.calls += 1
                data = np.array(z.data)
                if self.calls >= 3:
                    data[...] = np.nan
                return Tensor(data)

        res = rollout(ExplodingModel(), np.ones((2, 4)), n_horizons=5)
        assert not res.ok
        assert res.horizons_completed == 2
        assert res.trajectory.shape == (4, 4)

    def test_rollout_deterministic(self, tiny_pairs):
        result = train(tiny_run_config(epochs=2), tiny_pairs)
        seed = tiny_pairs.x_clean[0]
        a = rollout(result.checkpoint.model, seed, 3)
        b = rollout(result.checkpoint.model, seed, 3)
        np.testing.assert_array_equal(a.trajectory, b.trajectory)

    def test_horizon_mse_blocks(self):
        pred = np.zeros((6, 4))
        truth = np.concatenate([np.full((3, 4), 1.0), np.full((3, 4), 2.0)])
        out = horizon_mse(pred, truth, window=3)
        np.testing.assert_allclose(out, [1.0, 4.0])


class TestEvaluateCheckpoint:
    def test_untrained_checkpoint_reports_finite_errors(self, tiny_ds, tiny_pairs):
        from mi2a.autodiff import AdamState
        from mi2a.models import Mi2aModel
        from mi2a.training import Checkpoint

        cfg = tiny_run_config()
        model = Mi2aModel(cfg.model, seed=0)
        ckpt = Checkpoint(
            model=model, adam=AdamState(model.params), epoch=0,
            rng_state={}, run_config=cfg,
            global_min=tiny_pairs.global_min, global_max=tiny_pairs.global_max,
        )
        results = evaluate_checkpoint(ckpt, tiny_ds)
        for series in results.values():
            assert np.isfinite(series.mse).all()
            assert series.avg_mse > 0

    def test_physical_units_rescale_errors(self, tiny_ds, tiny_pairs):
        from mi2a.autodiff import AdamState
        from mi2a.models import Mi2aModel
        from mi2a.training import Checkpoint

        cfg = tiny_run_config()
        model = Mi2aModel(cfg.model, seed=0)
        ckpt = Checkpoint(
            model=model, adam=AdamState(model.params), epoch=0,
            rng_state={}, run_config=cfg,
            global_min=tiny_pairs.global_min, global_max=tiny_pairs.global_max,
        )
        norm = evaluate_checkpoint(ckpt, tiny_ds)
        phys = evaluate_checkpoint(ckpt, tiny_ds, physical_units=True)
        scale = tiny_pairs.global_max - tiny_pairs.global_min
        for p in norm:
            assert phys[p].avg_mse == pytest.approx(norm[p].avg_mse * scale**2, rel=1e-10)


class TestComparisonTable:
    def _stub_checkpoints(self, tiny_pairs):
        from mi2a.autodiff import AdamState
        from mi2a.models import Mi2aModel
        from mi2a.training import Checkpoint

        cfg = tiny_run_config()
        out = {}
        for label, seed in (("A", 1), ("B", 1)):
            model = Mi2aModel(cfg.model, seed=seed)
            out[label] = Checkpoint(
                model=model, adam=AdamState(model.params), epoch=0,
                rng_state={}, run_config=cfg,
                global_min=tiny_pairs.global_min, global_max=tiny_pairs.global_max,
            )
        return out

    def test_tied_models_flag_no_best(self, tiny_ds, tiny_pairs):
        # identical seeds -> identical rollouts -> exact tie
        rows = comparison_table(self._stub_checkpoints(tiny_pairs), tiny_ds)
        for row in rows:
            assert row["A_mse"] == row["B_mse"]
            assert row["best_mse"] == ""
            assert row["best_linf"] == ""

    def test_strictly_smaller_cell_is_flagged(self, tiny_ds, tiny_pairs):
        ckpts = self._stub_checkpoints(tiny_pairs)
        better = train(tiny_run_config(epochs=4),
                       tiny_pairs)
        ckpts["B"] = better.checkpoint
        rows = comparison_table(ckpts, tiny_ds)
        for row in rows:
            assert row["best_mse"] in ("A", "B")

    def test_missing_checkpoint_rejected(self, tiny_ds, tiny_pairs):
        ckpts = self._stub_checkpoints(tiny_pairs)
        ckpts["C"] = None
        with pytest.raises(FileNotFoundError, match="C"):
            comparison_table(ckpts, tiny_ds)

    def test_csv_writers(self, tiny_ds, tiny_pairs, tmp_path):
        rows = comparison_table(self._stub_checkpoints(tiny_pairs), tiny_ds,
                                metric_names=("mse", "mae"))
        write_table_csv(rows, tmp_path / "table.csv")
        header = (tmp_path / "table.csv").read_text().splitlines()[0]
        assert header.startswith("param,A_mse,B_mse,best_mse,A_mae")

        series = metrics(np.ones((3, 4)), np.zeros((3, 4)))
        write_metrics_csv(series, tmp_path / "m.csv")
        lines = (tmp_path / "m.csv").read_text().splitlines()
        assert lines[0] == "step,mse,mae,linf"
        assert len(lines) == 4

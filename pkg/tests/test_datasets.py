"""Benchmark generators, the binary container, and the windowing pipeline."""

import numpy as np
import pytest

from mi2a.datasets import (
    FormatError,
    SnapshotDataset,
    build_pairs,
    burgers_solution,
    denormalize,
    gen_burgers,
    gen_linear_convection,
    gen_shallow_water,
    load_dataset,
    normalize,
    read_tensor,
    save_dataset,
    training_reynolds,
    training_speeds,
    window_count,
    write_tensor,
)
from mi2a.datasets import test_positions as held_out_positions
from mi2a.datasets import test_speeds as midpoint_speeds
from mi2a.datasets.burgers import TEST_REYNOLDS
from mi2a.datasets.shallow_water import (
    SolverInstabilityError,
    plane_wave,
    simulate,
    training_positions,
)


class TestConvection:
    def test_gaussian_peak_value(self):
        expected = 1.0 / np.sqrt(2 * np.pi * 1e-4)
        ds = gen_linear_convection([1.0])
        assert ds.snapshots[0, 0].max() == pytest.approx(expected, rel=1e-12)
        assert expected == pytest.approx(39.8942, abs=5e-5)

    def test_wave_translates_to_half_domain(self):
        ds = gen_linear_convection([1.0])
        x = np.linspace(0, 1, 256)
        t = np.linspace(0, 1, 200)
        j = int(np.argmin(np.abs(t - 0.5)))
        peak_x = x[ds.snapshots[0, j].argmax()]
        assert abs(peak_x - 1.0 * t[j]) <= (x[1] - x[0])

    def test_parameter_grids(self):
        train = training_speeds()
        test = midpoint_speeds(train)
        assert len(train) == 20 and len(test) == 19
        np.testing.assert_allclose(train[[0, -1]], [0.775, 1.25])
        np.testing.assert_allclose(test, 0.5 * (train[:-1] + train[1:]))
        assert test[0] == pytest.approx(0.7875)

    def test_agrees_with_independent_high_precision_evaluation(self):
        ds = gen_linear_convection([0.9], n_points=64, n_steps=16)
        x = np.linspace(0, 1, 64).astype(np.longdouble)
        t = np.linspace(0, 1, 16).astype(np.longdouble)
        rho = np.longdouble(1e-4)
        ref = np.exp(-((x[None, :] - 0.9 * t[:, None]) ** 2) / (2 * rho)) / np.sqrt(
            2 * np.pi * rho
        )
        # atol floors the comparison where the float64 Gaussian tail underflows
        np.testing.assert_allclose(ds.snapshots[0], ref.astype(np.float64),
                                   rtol=1e-13, atol=1e-100)


class TestBurgers:
    def test_initial_condition_matches_naive_formula(self):
        re = 1000.0
        x = np.linspace(0, 1, 256)
        t0 = np.exp(re / 8.0)
        naive = x / (1.0 + np.sqrt(1.0 / t0) * np.exp(re * x**2 / 4.0))
        ours = burgers_solution(x, np.array([0.0]), re)[0]
        np.testing.assert_allclose(ours, naive, rtol=1e-12, atol=1e-300)

    def test_boundary_is_zero_for_all_times(self):
        ds = gen_burgers([2500.0])
        np.testing.assert_array_equal(ds.snapshots[0, :, 0], 0.0)

    def test_finite_at_extreme_reynolds(self):
        # the naive form overflows exp(Re/8) here; ours must stay finite
        ds = gen_burgers([4000.0])
        assert np.isfinite(ds.snapshots).all()
        assert ds.snapshots.max() < 1.0

    def test_parameter_grids(self):
        train = training_reynolds()
        assert len(train) == 7
        np.testing.assert_allclose(train[[0, -1]], [1000.0, 4000.0])
        assert TEST_REYNOLDS == (1100.0, 2600.0, 4100.0)

    def test_agrees_with_independent_high_precision_evaluation(self):
        re = 1500.0
        x = np.linspace(0, 1, 64).astype(np.longdouble)
        t = np.linspace(0, 2, 8).astype(np.longdouble)
        xx, tt = x[None, :], t[:, None]
        with np.errstate(over="ignore"):
            ref = (xx / (tt + 1)) / (
                1 + np.sqrt((tt + 1) / np.exp(np.longdouble(re) / 8))
                * np.exp(re * xx**2 / (4 * tt + 4))
            )
        ours = burgers_solution(np.linspace(0, 1, 64), np.linspace(0, 2, 8), re)
        np.testing.assert_allclose(ours, ref.astype(np.float64), rtol=1e-12, atol=1e-250)


class TestShallowWater:
    def test_zero_initial_state_is_fixed_point(self):
        frames = simulate(np.zeros((24, 24)), n_steps=10)
        np.testing.assert_array_equal(frames, 0.0)

    def test_total_water_volume_conserved(self):
        frames = simulate(plane_wave(48, 48, 0.5), n_steps=100)
        volume = (1.0 + frames).sum(axis=(1, 2))
        drift = np.abs(volume - volume[0]).max() / volume[0]
        assert drift < 1e-3  # closed walls: mass conserved (to round-off here)
        assert drift < 1e-12

    def test_plane_wave_splits_and_reflects(self):
        frames = simulate(plane_wave(64, 64, 0.5), n_steps=100)
        x = np.linspace(0, 1, 64)
        mid = frames[25, :, 32]
        left = x[np.argmax(mid[:32])]
        right = x[32 + np.argmax(mid[32:])]
        # two symmetric fronts moving apart at roughly sqrt(gH)=1
        assert left == pytest.approx(0.25, abs=0.06)
        assert right == pytest.approx(0.75, abs=0.06)
        # after hitting the wall the right front travels back inward
        pos_before = np.argmax(frames[40, 32:, 32])
        pos_after = np.argmax(frames[85, 32:, 32])
        assert pos_after < pos_before

    def test_instability_detection(self):
        with pytest.raises(ValueError):
            simulate(plane_wave(24, 24, 0.5), n_steps=5, max_dt=1.0)

    def test_blowup_reported_with_cfl_diagnostic(self):
        # disabling the CFL safety margin makes the explicit scheme diverge
        with pytest.raises(SolverInstabilityError, match="CFL"):
            simulate(plane_wave(32, 32, 0.5), n_steps=4, t_max=1.2, safety=3.0)

    def test_first_order_self_convergence_on_32_grid(self):
        h0 = plane_wave(32, 32, 0.5)
        base = 0.0025  # frame dt 0.01 -> substep counts 4, 8, 16
        s1 = simulate(h0, n_steps=6, t_max=0.05, max_dt=base)
        s2 = simulate(h0, n_steps=6, t_max=0.05, max_dt=base / 2)
        s3 = simulate(h0, n_steps=6, t_max=0.05, max_dt=base / 4)
        e1 = np.abs(s1[-1] - s2[-1]).max()
        e2 = np.abs(s2[-1] - s3[-1]).max()
        assert e2 < e1
        assert e1 / e2 == pytest.approx(2.0, rel=0.5)

    def test_position_grids(self):
        train = training_positions()
        held_out = held_out_positions(train)
        assert len(train) == 20 and len(held_out) == 5
        mids = 0.5 * (train[:-1] + train[1:])
        assert set(held_out).issubset(set(mids))

    def test_generator_dataset_shape(self):
        ds = gen_shallow_water([0.4, 0.6], nx=32, ny=32, n_steps=12, t_max=0.1)
        assert ds.snapshots.shape == (2, 12, 32, 32)
        assert ds.benchmark == "shallow-water"


class TestBinaryFormat:
    def test_round_trip_bit_exact(self, tmp_path):
        arr = np.random.default_rng(0).random((3, 5, 7))
        write_tensor(tmp_path / "t.mi2a", arr)
        back = read_tensor(tmp_path / "t.mi2a")
        np.testing.assert_array_equal(arr, back)

    def test_bad_magic(self, tmp_path):
        p = tmp_path / "bad.mi2a"
        p.write_bytes(b"NOPE" + b"\0" * 64)
        with pytest.raises(FormatError, match="magic"):
            read_tensor(p)

    def test_truncated_payload(self, tmp_path):
        p = tmp_path / "t.mi2a"
        write_tensor(p, np.ones((4, 4)))
        blob = p.read_bytes()
        p.write_bytes(blob[:-8])
        with pytest.raises(FormatError, match="payload"):
            read_tensor(p)

    def test_dataset_round_trip(self, tmp_path):
        ds = gen_linear_convection([0.8, 1.0], n_points=32, n_steps=16)
        save_dataset(ds, tmp_path / "conv.mi2a")
        back = load_dataset(tmp_path / "conv.mi2a")
        np.testing.assert_array_equal(ds.snapshots, back.snapshots)
        assert back.params == ds.params
        assert back.global_min == ds.global_min
        assert back.global_max == ds.global_max
        assert back.benchmark == "convection"

    def test_degenerate_dataset_rejected(self):
        with pytest.raises(ValueError, match="degenerate"):
            SnapshotDataset(params=[1.0], snapshots=np.zeros((1, 4, 8)),
                            global_min=0.0, global_max=0.0)


class TestWindowing:
    def test_window_count_formula(self):
        assert window_count(200, 10) == 181
        with pytest.raises(ValueError):
            window_count(19, 10)

    def test_sample_count_is_product(self):
        ds = gen_linear_convection(training_speeds(20))
        pairs = build_pairs(ds, 10, seed=0)
        assert pairs.samples_per_trajectory == 181
        assert pairs.n_samples == 20 * 181 == 3620

    def test_normalization_bounds(self, tiny_ds):
        pairs = build_pairs(tiny_ds, 3, seed=0)
        assert pairs.x_clean.min() == pytest.approx(0.0, abs=1e-15)
        # the global max lands somewhere in the training windows
        assert max(pairs.x_clean.max(), pairs.y.max()) == pytest.approx(1.0, abs=1e-15)
        assert pairs.x_clean.min() >= 0.0 and pairs.x_clean.max() <= 1.0

    def test_windows_reconstruct_source_trajectory(self, tiny_ds):
        pairs = build_pairs(tiny_ds, 3, seed=0)
        scaled = normalize(tiny_ds.snapshots, tiny_ds.global_min, tiny_ds.global_max)
        n_seg = pairs.samples_per_trajectory
        for traj_idx in range(tiny_ds.n_params):
            for s in range(n_seg):
                k = traj_idx * n_seg + s
                joined = np.concatenate([pairs.x_clean[k], pairs.y[k]], axis=0)
                np.testing.assert_array_equal(joined, scaled[traj_idx, s : s + 6])

    def test_noise_is_seeded_and_additive(self, tiny_ds):
        a = build_pairs(tiny_ds, 3, noise_sd=0.05, seed=9)
        b = build_pairs(tiny_ds, 3, noise_sd=0.05, seed=9)
        c = build_pairs(tiny_ds, 3, noise_sd=0.05, seed=10)
        np.testing.assert_array_equal(a.x_noisy, b.x_noisy)
        assert not np.array_equal(a.x_noisy, c.x_noisy)
        noise = a.x_noisy - a.x_clean
        assert abs(noise.mean()) < 0.01
        assert noise.std() == pytest.approx(0.05, rel=0.1)

    def test_normalization_invertible(self, tiny_ds):
        scaled = normalize(tiny_ds.snapshots, tiny_ds.global_min, tiny_ds.global_max)
        back = denormalize(scaled, tiny_ds.global_min, tiny_ds.global_max)
        np.testing.assert_allclose(back, tiny_ds.snapshots, atol=1e-12)

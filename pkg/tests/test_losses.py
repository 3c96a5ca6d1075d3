"""Loss contracts: the dispersion/dissipation split and the combined objective."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mi2a.autodiff import check_gradients, parameter
from mi2a.losses import (
    ae_loss,
    decompose_mse,
    evolver_loss,
    plain_mse_evolver_loss,
    total_loss,
)


class TestAeLoss:
    def test_identical_tensors(self):
        x = np.random.default_rng(0).random((3, 4))
        assert float(ae_loss(parameter(x, "p"), x).data) == 0.0

    def test_unit_offset(self):
        x = np.random.default_rng(0).random((3, 4))
        assert float(ae_loss(parameter(x + 1.0, "p"), x).data) == pytest.approx(1.0)

    def test_matches_elementwise_brute_force(self):
        rng = np.random.default_rng(1)
        a, b = rng.random((3, 4)), rng.random((3, 4))
        brute = sum(
            (a[i, j] - b[i, j]) ** 2 for i in range(3) for j in range(4)
        ) / 12
        assert float(ae_loss(parameter(a, "p"), b).data) == pytest.approx(brute, abs=1e-14)

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            ae_loss(parameter(np.ones((2, 2)), "p"), np.ones((2, 3)))


class TestDecomposition:
    def test_identical_fields_zero_everywhere(self):
        d = decompose_mse([1.0, 2.0, 3.0], [1.0, 2.0, 3.0])
        assert d.total == d.dissipation == pytest.approx(0.0, abs=1e-12)
        assert d.dispersion == pytest.approx(0.0, abs=1e-12)

    def test_pure_mean_offset_is_dissipation(self):
        # same shape, shifted by one: correlation 1, no phase error
        d = decompose_mse([1.0, 2.0, 3.0], [2.0, 3.0, 4.0])
        assert d.total == pytest.approx(1.0, abs=1e-12)
        assert d.dissipation == pytest.approx(1.0, abs=1e-12)
        assert d.dispersion == pytest.approx(0.0, abs=1e-10)

    def test_pure_phase_inversion_is_dispersion(self):
        d = decompose_mse([1.0, -1.0], [-1.0, 1.0])
        assert d.total == pytest.approx(4.0, abs=1e-12)
        assert d.dissipation == pytest.approx(0.0, abs=1e-10)
        assert d.dispersion == pytest.approx(4.0, abs=1e-10)

    def test_constant_fields_with_unequal_means(self):
        # degenerate sigma: all error mass lands in dissipation
        d = decompose_mse([2.0, 2.0, 2.0], [5.0, 5.0, 5.0])
        assert d.total == pytest.approx(9.0, abs=1e-12)
        assert d.dissipation == pytest.approx(9.0, abs=1e-10)
        assert d.dispersion == pytest.approx(0.0, abs=1e-10)

    def test_identity_on_10k_random_pairs_under_5s(self):
        rng = np.random.default_rng(7)
        worst = 0.0
        for _ in range(10_000):
            n = rng.integers(2, 65)
            y = rng.normal(scale=rng.uniform(0.1, 3.0), size=n)
            x = rng.normal(scale=rng.uniform(0.1, 3.0), size=n)
            d = decompose_mse(y, x)
            gap = abs(d.total - (d.dissipation + d.dispersion))
            worst = max(worst, gap / max(1.0, d.total))
        assert worst <= 1e-10

    @given(st.integers(2, 64), st.integers(0, 2**31 - 1))
    @settings(max_examples=80, deadline=None)
    def test_components_nonnegative_and_symmetric(self, n, seed):
        rng = np.random.default_rng(seed)
        y, x = rng.normal(size=n), rng.normal(size=n)
        d1 = decompose_mse(y, x)
        d2 = decompose_mse(x, y)
        assert d1.dissipation >= 0 and d1.dispersion >= 0
        assert d1.dissipation == pytest.approx(d2.dissipation, rel=1e-12, abs=1e-12)
        assert d1.dispersion == pytest.approx(d2.dispersion, rel=1e-12, abs=1e-12)

    def test_needs_two_points_and_matching_shapes(self):
        with pytest.raises(ValueError):
            decompose_mse([1.0], [1.0])
        with pytest.raises(ValueError):
            decompose_mse([1.0, 2.0], [1.0, 2.0, 3.0])


class TestEvolverLoss:
    def test_half_weight_equals_half_total_mse(self):
        rng = np.random.default_rng(2)
        pred = parameter(rng.random((2, 3, 8)), "pred")
        target = rng.random((2, 3, 8))
        val = float(evolver_loss(pred, target, 0.5).data)
        total = decompose_mse(target.reshape(2, 3, 8), pred.data).total
        assert val == pytest.approx(0.5 * total, rel=1e-10)

    def test_perfect_prediction_is_zero_for_any_weight(self):
        target = np.random.default_rng(3).random((2, 4, 6))
        for psi in (0.0, 0.3, 1.0):
            assert float(evolver_loss(parameter(target, "p"), target, psi).data) == \
                pytest.approx(0.0, abs=1e-12)

    def test_gradient_vs_central_differences(self):
        rng = np.random.default_rng(4)
        pred = parameter(rng.random((2, 3, 8)) + 0.2, "pred")
        target = rng.random((2, 3, 8))
        err = check_gradients(lambda: evolver_loss(pred, target, 0.7), [pred])
        assert err <= 1e-4

    def test_weight_out_of_range(self):
        pred = parameter(np.ones((1, 2, 4)), "p")
        with pytest.raises(ValueError):
            evolver_loss(pred, np.ones((1, 2, 4)), 1.5)

    def test_spatial_dims_flattened_per_step(self):
        rng = np.random.default_rng(5)
        pred2d = parameter(rng.random((1, 2, 4, 4)), "p")
        target = rng.random((1, 2, 4, 4))
        flat = evolver_loss(
            parameter(pred2d.data.reshape(1, 2, 16), "q"),
            target.reshape(1, 2, 16), 0.7,
        )
        assert float(evolver_loss(pred2d, target, 0.7).data) == \
            pytest.approx(float(flat.data), rel=1e-14)


class TestTotalLoss:
    def test_endpoints_and_midpoint(self):
        ae = parameter(np.array(2.0), "ae")
        ev = parameter(np.array(4.0), "ev")
        assert float(total_loss(ae, ev, 0.0).data) == 2.0
        assert float(total_loss(ae, ev, 1.0).data) == 4.0
        assert float(total_loss(ae, ev, 0.5).data) == 3.0

    def test_weight_validation(self):
        ae = parameter(np.array(1.0), "ae")
        with pytest.raises(ValueError):
            total_loss(ae, ae, -0.1)


class TestPlainMse:
    def test_identical_and_offset(self):
        x = np.random.default_rng(0).random((2, 3, 4))
        assert float(plain_mse_evolver_loss(parameter(x, "p"), x).data) == 0.0
        assert float(plain_mse_evolver_loss(parameter(x + 1, "p"), x).data) == \
            pytest.approx(1.0)

    def test_brute_force_oracle(self):
        rng = np.random.default_rng(6)
        a, b = rng.random((2, 3, 4)), rng.random((2, 3, 4))
        brute = float(np.mean([(a.flat[i] - b.flat[i]) ** 2 for i in range(a.size)]))
        assert float(plain_mse_evolver_loss(parameter(a, "p"), b).data) == \
            pytest.approx(brute, abs=1e-14)

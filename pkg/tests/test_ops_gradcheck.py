"""Op-level contracts: shapes from the layer tables, trivial identities, and
central finite-difference gradient verification."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mi2a.autodiff import Tensor, check_gradients, ops, parameter
from mi2a.diagnostics import gradcheck_battery


class TestDense:
    def test_identity_weights(self):
        x = Tensor(np.array([[1.0, 0.0]]))
        out = ops.dense(x, Tensor(np.eye(2)), Tensor(np.zeros(2)))
        np.testing.assert_array_equal(out.data, [[1.0, 0.0]])

    def test_sum_plus_bias(self):
        x = Tensor(np.array([[1.0, 2.0]]))
        out = ops.dense(x, Tensor(np.array([[1.0], [1.0]])), Tensor(np.array([3.0])))
        np.testing.assert_array_equal(out.data, [[6.0]])

    def test_gradient_matches_central_differences(self):
        rng = np.random.default_rng(1)
        x = parameter(rng.normal(size=(3, 4)), "x")
        w = parameter(rng.normal(size=(4, 5)), "w")
        b = parameter(rng.normal(size=(5,)), "b")
        err = check_gradients(lambda: ops.sum_(ops.dense(x, w, b)), [w])
        assert err <= 1e-6

    def test_shape_mismatch_raises(self):
        with pytest.raises(ValueError):
            ops.dense(Tensor(np.ones((2, 3))), Tensor(np.ones((4, 5))),
                      Tensor(np.zeros(5)))


class TestConv1d:
    def test_identity_kernel(self):
        out = ops.conv1d(Tensor(np.ones((1, 4, 1))), Tensor(np.ones((1, 1, 1))),
                         Tensor(np.zeros(1)), stride=1, padding="same")
        np.testing.assert_array_equal(out.data, np.ones((1, 4, 1)))

    def test_table_shape_256_to_128x64(self):
        out = ops.conv1d(Tensor(np.random.default_rng(0).random((3, 256, 1))),
                         Tensor(np.zeros((5, 1, 64))), Tensor(np.zeros(64)),
                         stride=2, padding="same")
        assert out.data.shape == (3, 128, 64)

    def test_invalid_stride(self):
        with pytest.raises(ValueError):
            ops.conv1d(Tensor(np.ones((1, 4, 1))), Tensor(np.ones((1, 1, 1))),
                       Tensor(np.zeros(1)), stride=0)

    def test_gradient_vs_central_differences(self):
        rng = np.random.default_rng(2)
        x = parameter(rng.normal(size=(2, 10, 2)), "x")
        w = parameter(rng.normal(size=(5, 2, 3)), "w")
        b = parameter(rng.normal(size=(3,)), "b")
        err = check_gradients(
            lambda: ops.sum_(ops.square(ops.conv1d(x, w, b, stride=2, padding="same"))),
            [x, w, b],
        )
        assert err <= 1e-6

    def test_valid_padding_matches_direct_correlation(self):
        rng = np.random.default_rng(3)
        x = rng.normal(size=(1, 9, 2))
        w = rng.normal(size=(3, 2, 1))
        out = ops.conv1d(Tensor(x), Tensor(w), Tensor(np.zeros(1)),
                         stride=1, padding="valid").data
        # brute-force cross-correlation
        expect = np.zeros((1, 7, 1))
        for t in range(7):
            expect[0, t, 0] = (x[0, t : t + 3, :] * w[:, :, 0]).sum()
        np.testing.assert_allclose(out, expect, atol=1e-14)


class TestPoolUpsample:
    def test_maxpool_table_shape(self):
        out = ops.maxpool1d(Tensor(np.zeros((3, 128, 64))), 2)
        assert out.data.shape == (3, 64, 64)

    def test_upsample_table_shape(self):
        out = ops.upsample1d(Tensor(np.zeros((3, 16, 32))), 2)
        assert out.data.shape == (3, 32, 32)

    def test_maxpool_routes_gradient_to_argmax_only(self):
        x = parameter(np.array([[[1.0], [3.0], [2.0], [2.0]]]), "x")
        out = ops.maxpool1d(x, 2)
        ops.sum_(out).backward()
        # first window picks index 1; second window ties -> first entry
        np.testing.assert_array_equal(x.grad[0, :, 0], [0.0, 1.0, 1.0, 0.0])

    def test_upsample_repeats_nearest(self):
        x = Tensor(np.arange(4.0).reshape(1, 2, 2))
        out = ops.upsample1d(x, 2)
        np.testing.assert_array_equal(out.data[0, :, 0], [0, 0, 2, 2])


class TestSoftmax:
    def test_uniform_for_equal_scores(self):
        out = ops.softmax(Tensor(np.zeros((1, 3))))
        np.testing.assert_allclose(out.data, np.full((1, 3), 1 / 3), atol=1e-15)

    def test_max_shift_avoids_overflow(self):
        out = ops.softmax(Tensor(np.array([[1000.0, 0.0]])))
        assert np.isfinite(out.data).all()
        np.testing.assert_allclose(out.data, [[1.0, 0.0]], atol=1e-300)

    @given(st.lists(st.floats(-50, 50), min_size=1, max_size=16))
    @settings(max_examples=60, deadline=None)
    def test_rows_sum_to_one(self, scores):
        out = ops.softmax(Tensor(np.array([scores])))
        assert abs(out.data.sum() - 1.0) <= 1e-12
        assert (out.data > 0).all()


class TestLstm:
    def test_zero_everything_gives_zero_state(self):
        x = Tensor(np.zeros((2, 3)))
        h = Tensor(np.zeros((2, 4)))
        c = Tensor(np.zeros((2, 4)))
        w = Tensor(np.zeros((7, 16)))
        b = Tensor(np.zeros(16))
        hn, cn = ops.lstm_step(x, h, c, w, b)
        np.testing.assert_array_equal(hn.data, np.zeros((2, 4)))
        np.testing.assert_array_equal(cn.data, np.zeros((2, 4)))

    def test_parameter_count_formula(self):
        # in=2, p=32: 4*(32*(2+32)+32) trainable scalars
        n_in, p = 2, 32
        w_elems = (n_in + p) * 4 * p
        b_elems = 4 * p
        assert w_elems + b_elems == 4 * (p * (n_in + p) + p) == 4480

    def test_gate_gradients_vs_central_differences(self):
        rng = np.random.default_rng(4)
        x = parameter(rng.normal(size=(2, 3, 2)) * 0.5, "x")
        w = parameter(rng.normal(size=(6, 16)) * 0.4, "w")
        b = parameter(rng.normal(size=(16,)) * 0.2, "b")

        def build():
            seq, hT, cT = ops.lstm(x, w, b)
            return ops.add(ops.sum_(ops.square(seq)), ops.sum_(ops.mul(hT, cT)))

        assert check_gradients(build, [x, w, b]) <= 1e-5

    def test_incompatible_weight_shape(self):
        with pytest.raises(ValueError):
            ops.lstm(Tensor(np.zeros((1, 2, 3))), Tensor(np.zeros((5, 16))),
                     Tensor(np.zeros(16)))


def test_full_battery_within_tolerance():
    results = gradcheck_battery()
    assert len(results) >= 30
    failures = [(n, e) for n, e in results if e > 1e-4]
    assert not failures, f"gradient checks failed: {failures}"

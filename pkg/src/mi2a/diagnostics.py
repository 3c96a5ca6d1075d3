"""Gradient-check battery for every differentiable op and the decomposed
evolver loss, used by the CLI `gradcheck` subcommand and the acceptance suite."""

from __future__ import annotations

import numpy as np

from .autodiff import Tensor, check_gradients, ops, parameter
from .losses import evolver_loss


def _p(rng, shape, scale=1.0, name="t"):
    return parameter(rng.normal(size=shape) * scale, name)


def gradcheck_battery(seed: int = 7) -> list[tuple[str, float]]:
    """Run central-difference checks; returns (op name, max relative error)."""
    rng = np.random.default_rng(seed)
    results: list[tuple[str, float]] = []

    def run(name, build, wrt):
        results.append((name, check_gradients(build, wrt)))

    a = _p(rng, (3, 4)); b = _p(rng, (3, 4)); c = _p(rng, (4,))
    run("add", lambda: ops.sum_(ops.square(ops.add(a, b))), [a, b])
    run("add_broadcast", lambda: ops.sum_(ops.square(ops.add(a, c))), [a, c])
    run("sub", lambda: ops.sum_(ops.square(ops.sub(a, b))), [a, b])
    run("mul", lambda: ops.sum_(ops.square(ops.mul(a, b))), [a, b])
    run("scale", lambda: ops.sum_(ops.square(ops.scale(a, -2.5))), [a])
    run("square", lambda: ops.sum_(ops.tanh(ops.square(a))), [a])
    run("exp", lambda: ops.sum_(ops.exp(ops.scale(a, 0.3))), [a])
    run("relu", lambda: ops.sum_(ops.square(ops.relu(a))), [a])
    run("tanh", lambda: ops.sum_(ops.square(ops.tanh(a))), [a])
    run("sigmoid", lambda: ops.sum_(ops.square(ops.sigmoid(a))), [a])

    sq = _p(rng, (3, 4), scale=0.5)
    run("sqrt", lambda: ops.sum_(ops.sqrt(ops.add(ops.square(sq), Tensor(np.ones((3, 4)))))), [sq])

    run("reshape", lambda: ops.sum_(ops.square(ops.reshape(a, (4, 3)))), [a])
    run("swapaxes", lambda: ops.sum_(ops.square(ops.swapaxes(a, 0, 1))), [a])
    run("index", lambda: ops.sum_(ops.square(a[:, 1:3])), [a])
    run("concat", lambda: ops.sum_(ops.square(ops.concat([a, b], axis=1))), [a, b])
    run("sum", lambda: ops.sum_(ops.square(ops.sum_(a, axis=0))), [a])
    run("mean", lambda: ops.sum_(ops.square(ops.mean(a, axis=1, keepdims=True))), [a])

    h = _p(rng, (3, 5))
    run("repeat_steps", lambda: ops.sum_(ops.square(ops.repeat_steps(h, 4))), [h])

    m1 = _p(rng, (3, 4)); m2 = _p(rng, (4, 5))
    run("matmul", lambda: ops.sum_(ops.square(ops.matmul(m1, m2))), [m1, m2])
    bm1 = _p(rng, (2, 3, 4)); bm2 = _p(rng, (2, 4, 3))
    run("matmul_batched", lambda: ops.sum_(ops.square(ops.matmul(bm1, bm2))), [bm1, bm2])

    x = _p(rng, (3, 4)); w = _p(rng, (4, 5)); bias = _p(rng, (5,))
    run("dense", lambda: ops.sum_(ops.square(ops.dense(x, w, bias))), [x, w, bias])

    run("softmax", lambda: ops.sum_(ops.square(ops.softmax(ops.scale(a, 2.0)))), [a])

    xc = _p(rng, (2, 12, 3)); wc = _p(rng, (5, 3, 4)); bc = _p(rng, (4,))
    run("conv1d_same_s2",
        lambda: ops.sum_(ops.square(ops.conv1d(xc, wc, bc, stride=2, padding="same"))),
        [xc, wc, bc])
    run("conv1d_valid",
        lambda: ops.sum_(ops.square(ops.conv1d(xc, wc, bc, stride=1, padding="valid"))),
        [xc, wc, bc])
    xt = _p(rng, (2, 6, 3)); wt = _p(rng, (5, 3, 4)); bt = _p(rng, (4,))
    run("conv1d_transpose",
        lambda: ops.sum_(ops.square(ops.conv1d_transpose(xt, wt, bt, stride=2))),
        [xt, wt, bt])
    run("maxpool1d", lambda: ops.sum_(ops.square(ops.maxpool1d(xc, 2))), [xc])
    run("upsample1d", lambda: ops.sum_(ops.square(ops.upsample1d(xc, 2))), [xc])

    x2 = _p(rng, (2, 8, 8, 2)); w2 = _p(rng, (3, 3, 2, 3)); b2 = _p(rng, (3,))
    run("conv2d_same_s2",
        lambda: ops.sum_(ops.square(ops.conv2d(x2, w2, b2, stride=2, padding="same"))),
        [x2, w2, b2])
    x2t = _p(rng, (2, 4, 4, 3)); w2t = _p(rng, (3, 3, 3, 2)); b2t = _p(rng, (2,))
    run("conv2d_transpose",
        lambda: ops.sum_(ops.square(ops.conv2d_transpose(x2t, w2t, b2t, stride=2))),
        [x2t, w2t, b2t])
    run("maxpool2d", lambda: ops.sum_(ops.square(ops.maxpool2d(x2, 2))), [x2])
    run("upsample2d", lambda: ops.sum_(ops.square(ops.upsample2d(x2, 2))), [x2])

    xs = _p(rng, (2, 4, 3)); ws = _p(rng, (8, 20), scale=0.4); bs = _p(rng, (20,), scale=0.2)
    h0 = _p(rng, (2, 5), scale=0.3); c0 = _p(rng, (2, 5), scale=0.3)

    def lstm_build():
        seq, hT, cT = ops.lstm(xs, ws, bs, h0, c0)
        return ops.add(ops.sum_(ops.square(seq)), ops.sum_(ops.mul(hT, cT)))

    run("lstm", lstm_build, [xs, ws, bs, h0, c0], )

    xs1 = _p(rng, (3, 4)); hs1 = _p(rng, (3, 5), scale=0.3); cs1 = _p(rng, (3, 5), scale=0.3)
    ws1 = _p(rng, (9, 20), scale=0.4); bs1 = _p(rng, (20,), scale=0.2)

    def lstm_step_build():
        hn, cn = ops.lstm_step(xs1, hs1, cs1, ws1, bs1)
        return ops.sum_(ops.add(ops.square(hn), ops.square(cn)))

    run("lstm_step", lstm_step_build, [xs1, hs1, cs1, ws1, bs1])

    pred = _p(rng, (2, 3, 8), scale=0.5)
    target = rng.random((2, 3, 8))
    run("evolver_loss_decomposed", lambda: evolver_loss(pred, target, 0.7), [pred])

    return results

"""Differentiable operations over :class:`~mi2a.autodiff.tensor.Tensor`.

Layout conventions (channels last, matching the layer tables the models use):

* 1D feature maps: ``(batch, length, channels)``, conv kernels ``(k, cin, cout)``
* 2D feature maps: ``(batch, height, width, channels)``, kernels ``(kh, kw, cin, cout)``
* sequences: ``(batch, time, features)``

Convolutions use im2col + one GEMM; their backward reuses the stored column
matrix. Same-padding produces ``ceil(len/stride)`` outputs, transpose convs
produce ``len * stride``.
"""

from __future__ import annotations

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .tensor import Tensor, _wrap


# ---------------------------------------------------------------------------
# broadcasting helpers
# ---------------------------------------------------------------------------

def _unbroadcast(grad: np.ndarray, shape: tuple[int, ...]) -> np.ndarray:
    """Sum `grad` down to `shape` (inverse of numpy broadcasting)."""
    if grad.shape == shape:
        return grad
    extra = grad.ndim - len(shape)
    if extra > 0:
        grad = grad.sum(axis=tuple(range(extra)))
    axes = tuple(i for i, n in enumerate(shape) if n == 1 and grad.shape[i] != 1)
    if axes:
        grad = grad.sum(axis=axes, keepdims=True)
    return grad


# ---------------------------------------------------------------------------
# elementwise arithmetic
# ---------------------------------------------------------------------------

def add(a: Tensor, b: Tensor) -> Tensor:
    out_data = a.data + b.data

    def backward(g):
        if a.requires_grad:
            a.accumulate(_unbroadcast(g, a.data.shape))
        if b.requires_grad:
            b.accumulate(_unbroadcast(g, b.data.shape))

    return Tensor.result(out_data, (a, b), backward)


def sub(a: Tensor, b: Tensor) -> Tensor:
    out_data = a.data - b.data

    def backward(g):
        if a.requires_grad:
            a.accumulate(_unbroadcast(g, a.data.shape))
        if b.requires_grad:
            b.accumulate(_unbroadcast(-g, b.data.shape))

    return Tensor.result(out_data, (a, b), backward)


def mul(a: Tensor, b: Tensor) -> Tensor:
    out_data = a.data * b.data

    def backward(g):
        if a.requires_grad:
            a.accumulate(_unbroadcast(g * b.data, a.data.shape))
        if b.requires_grad:
            b.accumulate(_unbroadcast(g * a.data, b.data.shape))

    return Tensor.result(out_data, (a, b), backward)


def scale(a: Tensor, s: float) -> Tensor:
    def backward(g):
        if a.requires_grad:
            a.accumulate(g * s)

    return Tensor.result(a.data * s, (a,), backward)


def square(a: Tensor) -> Tensor:
    def backward(g):
        if a.requires_grad:
            a.accumulate(g * (2.0 * a.data))

    return Tensor.result(a.data * a.data, (a,), backward)


def sqrt(a: Tensor) -> Tensor:
    root = np.sqrt(a.data)

    def backward(g):
        if a.requires_grad:
            a.accumulate(g * (0.5 / root))

    return Tensor.result(root, (a,), backward)


def exp(a: Tensor) -> Tensor:
    e = np.exp(a.data)

    def backward(g):
        if a.requires_grad:
            a.accumulate(g * e)

    return Tensor.result(e, (a,), backward)


def relu(a: Tensor) -> Tensor:
    out_data = np.maximum(a.data, 0.0)

    def backward(g):
        if a.requires_grad:
            a.accumulate(g * (a.data > 0.0))

    return Tensor.result(out_data, (a,), backward)


def tanh(a: Tensor) -> Tensor:
    t = np.tanh(a.data)

    def backward(g):
        if a.requires_grad:
            a.accumulate(g * (1.0 - t * t))

    return Tensor.result(t, (a,), backward)


def sigmoid(a: Tensor) -> Tensor:
    s = _sigmoid(a.data)

    def backward(g):
        if a.requires_grad:
            a.accumulate(g * s * (1.0 - s))

    return Tensor.result(s, (a,), backward)


def _sigmoid(x: np.ndarray) -> np.ndarray:
    out = np.empty_like(x)
    pos = x >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-x[pos]))
    ex = np.exp(x[~pos])
    out[~pos] = ex / (1.0 + ex)
    return out


# ---------------------------------------------------------------------------
# shape manipulation
# ---------------------------------------------------------------------------

def reshape(a: Tensor, shape) -> Tensor:
    old = a.data.shape

    def backward(g):
        if a.requires_grad:
            a.accumulate(g.reshape(old))

    return Tensor.result(a.data.reshape(shape), (a,), backward)


def swapaxes(a: Tensor, ax1: int, ax2: int) -> Tensor:
    def backward(g):
        if a.requires_grad:
            a.accumulate(np.swapaxes(g, ax1, ax2))

    return Tensor.result(np.swapaxes(a.data, ax1, ax2).copy(), (a,), backward)


def index(a: Tensor, key) -> Tensor:
    """Basic (non-fancy) indexing/slicing."""
    out_data = a.data[key]

    def backward(g):
        if a.requires_grad:
            full = np.zeros_like(a.data)
            full[key] = g
            a.accumulate(full)

    return Tensor.result(np.ascontiguousarray(out_data), (a,), backward)


def concat(tensors: list[Tensor], axis: int) -> Tensor:
    out_data = np.concatenate([t.data for t in tensors], axis=axis)
    sizes = [t.data.shape[axis] for t in tensors]
    splits = np.cumsum(sizes)[:-1]

    def backward(g):
        pieces = np.split(g, splits, axis=axis)
        for t, piece in zip(tensors, pieces):
            if t.requires_grad:
                t.accumulate(piece)

    return Tensor.result(out_data, tuple(tensors), backward)


def repeat_steps(a: Tensor, times: int) -> Tensor:
    """(batch, features) -> (batch, times, features) by repetition."""
    out_data = np.repeat(a.data[:, None, :], times, axis=1)

    def backward(g):
        if a.requires_grad:
            a.accumulate(g.sum(axis=1))

    return Tensor.result(out_data, (a,), backward)


# ---------------------------------------------------------------------------
# reductions
# ---------------------------------------------------------------------------

def sum_(a: Tensor, axis=None, keepdims: bool = False) -> Tensor:
    out_data = a.data.sum(axis=axis, keepdims=keepdims)

    def backward(g):
        if not a.requires_grad:
            return
        if axis is None:
            a.accumulate(np.broadcast_to(g, a.data.shape))
            return
        if not keepdims:
            g = np.expand_dims(g, axis)
        a.accumulate(np.broadcast_to(g, a.data.shape))

    return Tensor.result(out_data, (a,), backward)


def mean(a: Tensor, axis=None, keepdims: bool = False) -> Tensor:
    if axis is None:
        count = a.data.size
    elif isinstance(axis, tuple):
        count = int(np.prod([a.data.shape[i] for i in axis]))
    else:
        count = a.data.shape[axis]
    return scale(sum_(a, axis=axis, keepdims=keepdims), 1.0 / count)


# ---------------------------------------------------------------------------
# linear algebra
# ---------------------------------------------------------------------------

def matmul(a: Tensor, b: Tensor) -> Tensor:
    """2D or equal-batch stacked matmul; also (B,m,k) @ (k,n)."""
    out_data = a.data @ b.data

    def backward(g):
        if a.requires_grad:
            ga = g @ np.swapaxes(b.data, -1, -2)
            a.accumulate(_unbroadcast(ga, a.data.shape))
        if b.requires_grad:
            gb = np.swapaxes(a.data, -1, -2) @ g
            b.accumulate(_unbroadcast(gb, b.data.shape))

    return Tensor.result(out_data, (a, b), backward)


def dense(x: Tensor, w: Tensor, b: Tensor) -> Tensor:
    """Affine map over the last axis: y = x @ w + b."""
    if x.data.shape[-1] != w.data.shape[0]:
        raise ValueError(
            f"dense: inner dims mismatch {x.data.shape[-1]} vs {w.data.shape[0]}"
        )
    lead = x.data.shape[:-1]
    x2 = x.data.reshape(-1, x.data.shape[-1])
    out_data = (x2 @ w.data + b.data).reshape(*lead, w.data.shape[1])

    def backward(g):
        g2 = g.reshape(-1, g.shape[-1])
        if x.requires_grad:
            x.accumulate((g2 @ w.data.T).reshape(x.data.shape))
        if w.requires_grad:
            w.accumulate(x2.T @ g2)
        if b.requires_grad:
            b.accumulate(g2.sum(axis=0))

    return Tensor.result(out_data, (x, w, b), backward)


def softmax(a: Tensor, axis: int = -1) -> Tensor:
    """Numerically stable softmax (max-subtraction)."""
    shifted = a.data - a.data.max(axis=axis, keepdims=True)
    e = np.exp(shifted)
    out_data = e / e.sum(axis=axis, keepdims=True)

    def backward(g):
        if a.requires_grad:
            dot = (g * out_data).sum(axis=axis, keepdims=True)
            a.accumulate(out_data * (g - dot))

    return Tensor.result(out_data, (a,), backward)


# ---------------------------------------------------------------------------
# padding arithmetic shared by conv ops
# ---------------------------------------------------------------------------

def _same_geometry(length: int, k: int, stride: int) -> tuple[int, int, int]:
    out = -(-length // stride)
    total = max((out - 1) * stride + k - length, 0)
    return out, total // 2, total - total // 2


def _conv_geometry(length: int, k: int, stride: int, padding: str):
    if stride < 1:
        raise ValueError(f"invalid stride {stride}")
    if padding == "same":
        return _same_geometry(length, k, stride)
    if padding == "valid":
        if length < k:
            raise ValueError("kernel longer than input for valid padding")
        return (length - k) // stride + 1, 0, 0
    raise ValueError(f"unknown padding {padding!r}")


# ---------------------------------------------------------------------------
# 1D convolution family
# ---------------------------------------------------------------------------

def conv1d(x: Tensor, w: Tensor, b: Tensor, stride: int = 1, padding: str = "same") -> Tensor:
    batch, length, cin = x.data.shape
    k, kcin, cout = w.data.shape
    if kcin != cin:
        raise ValueError(f"conv1d: channel mismatch {kcin} vs {cin}")
    lout, pl, pr = _conv_geometry(length, k, stride, padding)

    xpad = np.pad(x.data, ((0, 0), (pl, pr), (0, 0)))
    win = sliding_window_view(xpad, k, axis=1)[:, ::stride]  # (B, lout, cin, k)
    col = np.ascontiguousarray(win.swapaxes(2, 3)).reshape(batch * lout, k * cin)
    wmat = w.data.reshape(k * cin, cout)
    out_data = (col @ wmat + b.data).reshape(batch, lout, cout)

    def backward(g):
        g2 = g.reshape(batch * lout, cout)
        if w.requires_grad:
            w.accumulate((col.T @ g2).reshape(k, cin, cout))
        if b.requires_grad:
            b.accumulate(g2.sum(axis=0))
        if x.requires_grad:
            dcol = (g2 @ wmat.T).reshape(batch, lout, k, cin)
            dxpad = np.zeros_like(xpad)
            for j in range(k):
                dxpad[:, j : j + stride * lout : stride, :] += dcol[:, :, j, :]
            x.accumulate(dxpad[:, pl : pl + length, :])

    return Tensor.result(out_data, (x, w, b), backward)


def conv1d_transpose(x: Tensor, w: Tensor, b: Tensor, stride: int = 2) -> Tensor:
    """Stride-upsampling transpose conv; output length = input length * stride."""
    batch, length, cin = x.data.shape
    k, kcin, cout = w.data.shape
    if kcin != cin:
        raise ValueError(f"conv1d_transpose: channel mismatch {kcin} vs {cin}")
    lout = length * stride
    _, pl, pr = _same_geometry(lout, k, stride)

    wswap = np.ascontiguousarray(w.data.transpose(1, 0, 2)).reshape(cin, k * cout)
    prod = (x.data.reshape(batch * length, cin) @ wswap).reshape(batch, length, k, cout)
    ypad = np.zeros((batch, lout + pl + pr, cout))
    for j in range(k):
        ypad[:, j : j + stride * length : stride, :] += prod[:, :, j, :]
    out_data = ypad[:, pl : pl + lout, :] + b.data

    def backward(g):
        gpad = np.pad(g, ((0, 0), (pl, pr), (0, 0)))
        win = sliding_window_view(gpad, k, axis=1)[:, ::stride]  # (B, length, cout, k)
        gcol = np.ascontiguousarray(win.swapaxes(2, 3)).reshape(batch * length, k * cout)
        if x.requires_grad:
            x.accumulate((gcol @ wswap.T).reshape(batch, length, cin))
        if w.requires_grad:
            dwswap = x.data.reshape(batch * length, cin).T @ gcol
            w.accumulate(dwswap.reshape(cin, k, cout).swapaxes(0, 1))
        if b.requires_grad:
            b.accumulate(g.sum(axis=(0, 1)))

    return Tensor.result(out_data, (x, w, b), backward)


def maxpool1d(x: Tensor, window: int = 2) -> Tensor:
    batch, length, ch = x.data.shape
    lout = length // window  # trailing remainder is dropped
    blocks = x.data[:, : lout * window, :].reshape(batch, lout, window, ch)
    if window == 2:
        # comparison beats generic argmax; ties route to the first entry
        second_wins = blocks[:, :, 1, :] > blocks[:, :, 0, :]
        out_data = np.where(second_wins, blocks[:, :, 1, :], blocks[:, :, 0, :])

        def backward(g):
            if x.requires_grad:
                dx = np.zeros_like(x.data)
                dx[:, 0 : lout * 2 : 2, :] = np.where(second_wins, 0.0, g)
                dx[:, 1 : lout * 2 : 2, :] = np.where(second_wins, g, 0.0)
                x.accumulate(dx)

        return Tensor.result(out_data, (x,), backward)

    idx = blocks.argmax(axis=2)
    out_data = np.take_along_axis(blocks, idx[:, :, None, :], axis=2)[:, :, 0, :]

    def backward(g):
        if x.requires_grad:
            dblocks = np.zeros((batch, lout, window, ch))
            np.put_along_axis(dblocks, idx[:, :, None, :], g[:, :, None, :], axis=2)
            dx = np.zeros_like(x.data)
            dx[:, : lout * window, :] = dblocks.reshape(batch, lout * window, ch)
            x.accumulate(dx)

    return Tensor.result(out_data, (x,), backward)


def upsample1d(x: Tensor, factor: int = 2) -> Tensor:
    """Nearest-neighbour repetition along the length axis."""
    out_data = np.repeat(x.data, factor, axis=1)

    def backward(g):
        if x.requires_grad:
            batch, length, ch = x.data.shape
            x.accumulate(g.reshape(batch, length, factor, ch).sum(axis=2))

    return Tensor.result(out_data, (x,), backward)


# ---------------------------------------------------------------------------
# 2D convolution family
# ---------------------------------------------------------------------------

def conv2d(x: Tensor, w: Tensor, b: Tensor, stride: int = 1, padding: str = "same") -> Tensor:
    batch, h, wdt, cin = x.data.shape
    kh, kw, kcin, cout = w.data.shape
    if kcin != cin:
        raise ValueError(f"conv2d: channel mismatch {kcin} vs {cin}")
    ho, pt, pb = _conv_geometry(h, kh, stride, padding)
    wo, pl, pr = _conv_geometry(wdt, kw, stride, padding)

    xpad = np.pad(x.data, ((0, 0), (pt, pb), (pl, pr), (0, 0)))
    win = sliding_window_view(xpad, (kh, kw), axis=(1, 2))[:, ::stride, ::stride]
    # win: (B, ho, wo, cin, kh, kw) -> col rows ordered (kh, kw, cin)
    col = np.ascontiguousarray(win.transpose(0, 1, 2, 4, 5, 3)).reshape(
        batch * ho * wo, kh * kw * cin
    )
    wmat = w.data.reshape(kh * kw * cin, cout)
    out_data = (col @ wmat + b.data).reshape(batch, ho, wo, cout)

    def backward(g):
        g2 = g.reshape(batch * ho * wo, cout)
        if w.requires_grad:
            w.accumulate((col.T @ g2).reshape(kh, kw, cin, cout))
        if b.requires_grad:
            b.accumulate(g2.sum(axis=0))
        if x.requires_grad:
            dcol = (g2 @ wmat.T).reshape(batch, ho, wo, kh, kw, cin)
            dxpad = np.zeros_like(xpad)
            for jh in range(kh):
                for jw in range(kw):
                    dxpad[
                        :, jh : jh + stride * ho : stride, jw : jw + stride * wo : stride, :
                    ] += dcol[:, :, :, jh, jw, :]
            x.accumulate(dxpad[:, pt : pt + h, pl : pl + wdt, :])

    return Tensor.result(out_data, (x, w, b), backward)


def conv2d_transpose(x: Tensor, w: Tensor, b: Tensor, stride: int = 2) -> Tensor:
    batch, h, wdt, cin = x.data.shape
    kh, kw, kcin, cout = w.data.shape
    if kcin != cin:
        raise ValueError(f"conv2d_transpose: channel mismatch {kcin} vs {cin}")
    ho, wo = h * stride, wdt * stride
    _, pt, pb = _same_geometry(ho, kh, stride)
    _, pl, pr = _same_geometry(wo, kw, stride)

    wswap = np.ascontiguousarray(w.data.transpose(2, 0, 1, 3)).reshape(cin, kh * kw * cout)
    prod = (x.data.reshape(batch * h * wdt, cin) @ wswap).reshape(batch, h, wdt, kh, kw, cout)
    ypad = np.zeros((batch, ho + pt + pb, wo + pl + pr, cout))
    for jh in range(kh):
        for jw in range(kw):
            ypad[
                :, jh : jh + stride * h : stride, jw : jw + stride * wdt : stride, :
            ] += prod[:, :, :, jh, jw, :]
    out_data = ypad[:, pt : pt + ho, pl : pl + wo, :] + b.data

    def backward(g):
        gpad = np.pad(g, ((0, 0), (pt, pb), (pl, pr), (0, 0)))
        win = sliding_window_view(gpad, (kh, kw), axis=(1, 2))[:, ::stride, ::stride]
        gcol = np.ascontiguousarray(win.transpose(0, 1, 2, 4, 5, 3)).reshape(
            batch * h * wdt, kh * kw * cout
        )
        if x.requires_grad:
            x.accumulate((gcol @ wswap.T).reshape(batch, h, wdt, cin))
        if w.requires_grad:
            dwswap = x.data.reshape(batch * h * wdt, cin).T @ gcol
            w.accumulate(dwswap.reshape(cin, kh, kw, cout).transpose(1, 2, 0, 3))
        if b.requires_grad:
            b.accumulate(g.sum(axis=(0, 1, 2)))

    return Tensor.result(out_data, (x, w, b), backward)


def maxpool2d(x: Tensor, window: int = 2) -> Tensor:
    batch, h, wdt, ch = x.data.shape
    ho, wo = h // window, wdt // window
    blocks = (
        x.data[:, : ho * window, : wo * window, :]
        .reshape(batch, ho, window, wo, window, ch)
        .transpose(0, 1, 3, 2, 4, 5)
        .reshape(batch, ho, wo, window * window, ch)
    )
    idx = blocks.argmax(axis=3)
    out_data = np.take_along_axis(blocks, idx[:, :, :, None, :], axis=3)[:, :, :, 0, :]

    def backward(g):
        if x.requires_grad:
            dblocks = np.zeros_like(blocks)
            np.put_along_axis(dblocks, idx[:, :, :, None, :], g[:, :, :, None, :], axis=3)
            dx = np.zeros_like(x.data)
            dx[:, : ho * window, : wo * window, :] = (
                dblocks.reshape(batch, ho, wo, window, window, ch)
                .transpose(0, 1, 3, 2, 4, 5)
                .reshape(batch, ho * window, wo * window, ch)
            )
            x.accumulate(dx)

    return Tensor.result(out_data, (x,), backward)


def upsample2d(x: Tensor, factor: int = 2) -> Tensor:
    out_data = np.repeat(np.repeat(x.data, factor, axis=1), factor, axis=2)

    def backward(g):
        if x.requires_grad:
            batch, h, wdt, ch = x.data.shape
            x.accumulate(
                g.reshape(batch, h, factor, wdt, factor, ch).sum(axis=(2, 4))
            )

    return Tensor.result(out_data, (x,), backward)


# ---------------------------------------------------------------------------
# LSTM
# ---------------------------------------------------------------------------
# Fused whole-sequence cell with analytic BPTT. Weights hold the four gate
# blocks [input, forget, cell, output] side by side: w (in+p, 4p), b (4p,).


def _lstm_forward(x, w, b, h0, c0):
    batch, steps, nin = x.shape
    p = w.shape[1] // 4
    hs = np.empty((steps + 1, batch, p))
    cs = np.empty((steps + 1, batch, p))
    hs[0], cs[0] = h0, c0
    gates = np.empty((steps, batch, 4 * p))
    tanh_c = np.empty((steps, batch, p))
    for t in range(steps):
        z = np.concatenate([x[:, t, :], hs[t]], axis=1) @ w + b
        i = _sigmoid(z[:, :p])
        f = _sigmoid(z[:, p : 2 * p])
        g_ = np.tanh(z[:, 2 * p : 3 * p])
        o = _sigmoid(z[:, 3 * p :])
        cs[t + 1] = f * cs[t] + i * g_
        tanh_c[t] = np.tanh(cs[t + 1])
        hs[t + 1] = o * tanh_c[t]
        gates[t] = np.concatenate([i, f, g_, o], axis=1)
    return hs, cs, gates, tanh_c


def lstm(x: Tensor, w: Tensor, b: Tensor, h0: Tensor | None = None, c0: Tensor | None = None):
    """Run an LSTM over (batch, steps, nin); returns (H, h_final, c_final)."""
    batch, steps, nin = x.data.shape
    if w.data.shape[0] != nin + w.data.shape[1] // 4:
        raise ValueError(
            f"lstm: weight rows {w.data.shape[0]} incompatible with input width {nin}"
        )
    p = w.data.shape[1] // 4
    h0_t = h0 if h0 is not None else Tensor(np.zeros((batch, p)))
    c0_t = c0 if c0 is not None else Tensor(np.zeros((batch, p)))

    hs, cs, gates, tanh_c = _lstm_forward(x.data, w.data, b.data, h0_t.data, c0_t.data)
    # pack H, h_T, c_T into one node output; callers slice it apart
    out_data = np.concatenate([hs[1:].transpose(1, 0, 2), hs[-1][:, None], cs[-1][:, None]], axis=1)

    def backward(g):
        dH = np.ascontiguousarray(g[:, :steps].transpose(1, 0, 2))
        dh_next = g[:, steps].copy()
        dc_next = g[:, steps + 1].copy()
        dx = np.empty_like(x.data)
        dw = np.zeros_like(w.data)
        db = np.zeros_like(b.data)
        for t in range(steps - 1, -1, -1):
            dh = dH[t] + dh_next
            i = gates[t, :, :p]
            f = gates[t, :, p : 2 * p]
            g_ = gates[t, :, 2 * p : 3 * p]
            o = gates[t, :, 3 * p :]
            tc = tanh_c[t]
            do = dh * tc
            dc = dc_next + dh * o * (1.0 - tc * tc)
            di = dc * g_
            df = dc * cs[t]
            dg = dc * i
            dc_next = dc * f
            dz = np.concatenate(
                [di * i * (1 - i), df * f * (1 - f), dg * (1 - g_ * g_), do * o * (1 - o)],
                axis=1,
            )
            xin = np.concatenate([x.data[:, t, :], hs[t]], axis=1)
            dw += xin.T @ dz
            db += dz.sum(axis=0)
            dxin = dz @ w.data.T
            dx[:, t, :] = dxin[:, :nin]
            dh_next = dxin[:, nin:]
        if x.requires_grad:
            x.accumulate(dx)
        if w.requires_grad:
            w.accumulate(dw)
        if b.requires_grad:
            b.accumulate(db)
        if h0_t.requires_grad:
            h0_t.accumulate(dh_next)
        if c0_t.requires_grad:
            c0_t.accumulate(dc_next)

    packed = Tensor.result(out_data, (x, w, b, h0_t, c0_t), backward)
    seq = index(packed, (slice(None), slice(0, steps)))
    h_final = index(packed, (slice(None), steps))
    c_final = index(packed, (slice(None), steps + 1))
    return seq, h_final, c_final


def lstm_step(x_t: Tensor, h: Tensor, c: Tensor, w: Tensor, b: Tensor):
    """Single LSTM cell update; returns (h', c')."""
    x3 = reshape(x_t, (x_t.data.shape[0], 1, x_t.data.shape[1]))
    _, h_new, c_new = lstm(x3, w, b, h0=h, c0=c)
    return h_new, c_new

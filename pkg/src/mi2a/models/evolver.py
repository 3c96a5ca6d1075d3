"""Latent-space evolvers.

All three variants share the same sequence skeleton: a two-layer LSTM encoder
reads the latent window, its final hidden state is repeated as the decoder
input, and a two-layer LSTM decoder (initialized layer-by-layer from the
encoder's final states) produces decoder states S.

* ``mi2a``: multiplicative attention over encoder states plus a learnable
  temporal-derivative convolution; S + context + derivative are summed in
  hidden space before the output projection.
* ``luong``: the same multiplicative attention, but context and S are merged
  through a tanh dense layer (no derivative branch, no skip sum).
* ``cran``: plain sequence-to-sequence, direct output projection of S.
"""

from __future__ import annotations

import numpy as np

from ..autodiff import SeedTree, Tensor, glorot_uniform, ops, parameter
from .config import ModelConfig


def _lstm_params(name: str, n_in: int, units: int, seeds: SeedTree, out: dict):
    w = glorot_uniform((n_in + units, 4 * units), n_in + units, 4 * units,
                       seeds.stream(f"{name}.w"))
    b = np.zeros(4 * units)
    b[units : 2 * units] = 1.0  # forget-gate bias starts open
    out[f"{name}.w"] = parameter(w, f"{name}.w")
    out[f"{name}.b"] = parameter(b, f"{name}.b")


def build_evolver_params(cfg: ModelConfig, seeds: SeedTree) -> dict[str, Tensor]:
    r, p = cfg.latent_dim, cfg.hidden_units
    params: dict[str, Tensor] = {}
    _lstm_params("evo.lstm_enc1", r, p, seeds, params)
    _lstm_params("evo.lstm_enc2", p, p, seeds, params)
    _lstm_params("evo.lstm_dec1", p, p, seeds, params)
    _lstm_params("evo.lstm_dec2", p, p, seeds, params)

    def dense_w(name, nin, nout):
        params[f"{name}.w"] = parameter(
            glorot_uniform((nin, nout), nin, nout, seeds.stream(f"{name}.w")), f"{name}.w"
        )
        params[f"{name}.b"] = parameter(np.zeros(nout), f"{name}.b")

    if cfg.evolver in ("mi2a", "luong"):
        dense_w("evo.attn", p, p)
    if cfg.evolver == "mi2a":
        kd = cfg.derivative_kernel
        params["evo.deriv.w"] = parameter(
            glorot_uniform((kd, p, p), kd * p, kd * p, seeds.stream("evo.deriv.w")),
            "evo.deriv.w",
        )
        params["evo.deriv.b"] = parameter(np.zeros(p), "evo.deriv.b")
    if cfg.evolver == "luong":
        dense_w("evo.combine", 2 * p, p)
    dense_w("evo.out", p, r)
    return params


def attention_context(h_enc: Tensor, weights: np.ndarray) -> Tensor:
    """Constant-weight context: sum_i w_i * h_enc[:, i, :], shape (B, p)."""
    w = Tensor(np.asarray(weights, dtype=np.float64)[None, :])
    ctx = ops.matmul(w, h_enc)  # (B, 1, p) via broadcast
    return ops.reshape(ctx, (h_enc.data.shape[0], h_enc.data.shape[2]))


def _sequence_skeleton(params, z: Tensor):
    steps = z.data.shape[1]
    h1_seq, h1, c1 = ops.lstm(z, params["evo.lstm_enc1.w"], params["evo.lstm_enc1.b"])
    h_enc, h2, c2 = ops.lstm(h1_seq, params["evo.lstm_enc2.w"], params["evo.lstm_enc2.b"])
    dec_inp = ops.repeat_steps(h2, steps)
    s1_seq, _, _ = ops.lstm(dec_inp, params["evo.lstm_dec1.w"], params["evo.lstm_dec1.b"],
                            h0=h1, c0=c1)
    s_dec, _, _ = ops.lstm(s1_seq, params["evo.lstm_dec2.w"], params["evo.lstm_dec2.b"],
                           h0=h2, c0=c2)
    return h_enc, s_dec


def _attention(params, s_dec: Tensor, h_enc: Tensor,
               fixed_weights: np.ndarray | None):
    batch, steps, _ = s_dec.data.shape
    if fixed_weights is not None:
        if len(fixed_weights) != steps:
            raise ValueError(
                f"{len(fixed_weights)} fixed attention weights for {steps} steps"
            )
        ctx = ops.repeat_steps(attention_context(h_enc, fixed_weights), steps)
        attn_map = np.tile(np.asarray(fixed_weights, dtype=np.float64), (batch, steps, 1))
        return ctx, attn_map
    proj = ops.dense(s_dec, params["evo.attn.w"], params["evo.attn.b"])
    scores = ops.matmul(proj, ops.swapaxes(h_enc, 1, 2))  # (B, T, T)
    alpha = ops.softmax(scores, axis=-1)
    ctx = ops.matmul(alpha, h_enc)
    return ctx, alpha.data


def evolve(params: dict[str, Tensor], cfg: ModelConfig, z,
           fixed_attention_weights: np.ndarray | None = None):
    """Advance a latent window one horizon; returns (z_pred, attention_map).

    ``attention_map`` is None for the cran evolver, otherwise an
    (B, T, T) array whose rows sum to one (softmax) or hold the fixed
    override weights.
    """
    zt = z if isinstance(z, Tensor) else Tensor(np.asarray(z, dtype=np.float64))
    h_enc, s_dec = _sequence_skeleton(params, zt)

    if cfg.evolver == "cran":
        z_pred = ops.dense(s_dec, params["evo.out.w"], params["evo.out.b"])
        return z_pred, None

    ctx, attn_map = _attention(params, s_dec, h_enc, fixed_attention_weights)
    if cfg.evolver == "mi2a":
        deriv = ops.conv1d(h_enc, params["evo.deriv.w"], params["evo.deriv.b"],
                           stride=1, padding="same")
        combined = ops.add(ops.add(s_dec, ctx), deriv)
    else:  # luong
        merged = ops.concat([ctx, s_dec], axis=2)
        combined = ops.tanh(
            ops.dense(merged, params["evo.combine.w"], params["evo.combine.b"])
        )
    z_pred = ops.dense(combined, params["evo.out.w"], params["evo.out.b"])
    return z_pred, attn_map

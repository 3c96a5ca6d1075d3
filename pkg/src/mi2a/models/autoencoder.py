"""Convolutional encoder/decoder applied per time slice.

Encoder: conv(s2) -> pool -> conv(s2) -> pool -> flatten -> dense -> dense
-> linear latent head. The decoder mirrors it with dense layers, nearest
upsampling and transpose convs, ending in a linear output map. Hidden conv
and dense layers use ReLU.
"""

from __future__ import annotations

import numpy as np

from ..autodiff import SeedTree, Tensor, glorot_uniform, ops, parameter
from .config import ModelConfig


def build_encoder_params(cfg: ModelConfig, seeds: SeedTree) -> dict[str, Tensor]:
    k = cfg.conv_kernel
    f1, f2 = cfg.conv_filters
    d1, d2 = cfg.dense_units
    r = cfg.latent_dim
    flat = cfg.flatten_size
    kshape1 = (k, 1, f1) if cfg.ndim == 1 else (k, k, 1, f1)
    kshape2 = (k, f1, f2) if cfg.ndim == 1 else (k, k, f1, f2)
    taps = k if cfg.ndim == 1 else k * k

    def conv_w(name, shape, cin, cout):
        return parameter(
            glorot_uniform(shape, taps * cin, taps * cout, seeds.stream(name)), name
        )

    def dense_w(name, nin, nout):
        return parameter(
            glorot_uniform((nin, nout), nin, nout, seeds.stream(name)), name
        )

    return {
        "enc.conv1.w": conv_w("enc.conv1.w", kshape1, 1, f1),
        "enc.conv1.b": parameter(np.zeros(f1), "enc.conv1.b"),
        "enc.conv2.w": conv_w("enc.conv2.w", kshape2, f1, f2),
        "enc.conv2.b": parameter(np.zeros(f2), "enc.conv2.b"),
        "enc.dense1.w": dense_w("enc.dense1.w", flat, d1),
        "enc.dense1.b": parameter(np.zeros(d1), "enc.dense1.b"),
        "enc.dense2.w": dense_w("enc.dense2.w", d1, d2),
        "enc.dense2.b": parameter(np.zeros(d2), "enc.dense2.b"),
        "enc.latent.w": dense_w("enc.latent.w", d2, r),
        "enc.latent.b": parameter(np.zeros(r), "enc.latent.b"),
    }


def build_decoder_params(cfg: ModelConfig, seeds: SeedTree) -> dict[str, Tensor]:
    cfg.validate_decoder()
    k = cfg.conv_kernel
    f1, f2 = cfg.conv_filters
    d1, d2 = cfg.dense_units
    r = cfg.latent_dim
    flat = cfg.flatten_size
    tshape1 = (k, f2, f1) if cfg.ndim == 1 else (k, k, f2, f1)
    tshape2 = (k, f1, 1) if cfg.ndim == 1 else (k, k, f1, 1)
    taps = k if cfg.ndim == 1 else k * k

    def conv_w(name, shape, cin, cout):
        return parameter(
            glorot_uniform(shape, taps * cin, taps * cout, seeds.stream(name)), name
        )

    def dense_w(name, nin, nout):
        return parameter(
            glorot_uniform((nin, nout), nin, nout, seeds.stream(name)), name
        )

    return {
        "dec.dense1.w": dense_w("dec.dense1.w", r, d2),
        "dec.dense1.b": parameter(np.zeros(d2), "dec.dense1.b"),
        "dec.dense2.w": dense_w("dec.dense2.w", d2, d1),
        "dec.dense2.b": parameter(np.zeros(d1), "dec.dense2.b"),
        "dec.dense3.w": dense_w("dec.dense3.w", d1, flat),
        "dec.dense3.b": parameter(np.zeros(flat), "dec.dense3.b"),
        "dec.convt1.w": conv_w("dec.convt1.w", tshape1, f2, f1),
        "dec.convt1.b": parameter(np.zeros(f1), "dec.convt1.b"),
        "dec.convt2.w": conv_w("dec.convt2.w", tshape2, f1, 1),
        "dec.convt2.b": parameter(np.zeros(1), "dec.convt2.b"),
    }


def _as_slices(x, cfg: ModelConfig):
    """(B, T, *spatial[, 1]) -> Tensor (B*T, *spatial, 1) plus (B, T)."""
    t = x if isinstance(x, Tensor) else Tensor(np.asarray(x, dtype=np.float64))
    shape = t.data.shape
    if len(shape) == 2 + cfg.ndim:
        batch, steps = shape[0], shape[1]
        spatial = shape[2:]
        t = ops.reshape(t, (batch * steps,) + spatial + (1,))
    elif len(shape) == 3 + cfg.ndim and shape[-1] == 1:
        batch, steps = shape[0], shape[1]
        spatial = shape[2:-1]
        t = ops.reshape(t, (batch * steps,) + spatial + (1,))
    else:
        raise ValueError(f"unexpected input shape {shape} for {cfg.ndim}D fields")
    if spatial != cfg.spatial:
        raise ValueError(f"field shape {spatial} does not match config {cfg.spatial}")
    return t, batch, steps


def encode(params: dict[str, Tensor], cfg: ModelConfig, x) -> Tensor:
    """Map field windows (B, T, *spatial) to latent windows (B, T, r)."""
    h, batch, steps = _as_slices(x, cfg)
    conv = ops.conv1d if cfg.ndim == 1 else ops.conv2d
    pool = ops.maxpool1d if cfg.ndim == 1 else ops.maxpool2d
    h = ops.relu(conv(h, params["enc.conv1.w"], params["enc.conv1.b"],
                      stride=cfg.conv_stride, padding="same"))
    h = pool(h, cfg.pool)
    h = ops.relu(conv(h, params["enc.conv2.w"], params["enc.conv2.b"],
                      stride=cfg.conv_stride, padding="same"))
    h = pool(h, cfg.pool)
    h = ops.reshape(h, (h.data.shape[0], -1))
    h = ops.relu(ops.dense(h, params["enc.dense1.w"], params["enc.dense1.b"]))
    h = ops.relu(ops.dense(h, params["enc.dense2.w"], params["enc.dense2.b"]))
    z = ops.dense(h, params["enc.latent.w"], params["enc.latent.b"])
    return ops.reshape(z, (batch, steps, cfg.latent_dim))


def decode(params: dict[str, Tensor], cfg: ModelConfig, z: Tensor) -> Tensor:
    """Map latent windows (B, T, r) back to field windows (B, T, *spatial)."""
    zt = z if isinstance(z, Tensor) else Tensor(np.asarray(z, dtype=np.float64))
    batch, steps, r = zt.data.shape
    if r != cfg.latent_dim:
        raise ValueError(f"latent dim {r} does not match config {cfg.latent_dim}")
    h = ops.reshape(zt, (batch * steps, r))
    h = ops.relu(ops.dense(h, params["dec.dense1.w"], params["dec.dense1.b"]))
    h = ops.relu(ops.dense(h, params["dec.dense2.w"], params["dec.dense2.b"]))
    h = ops.relu(ops.dense(h, params["dec.dense3.w"], params["dec.dense3.b"]))
    h = ops.reshape(h, (batch * steps,) + cfg.reduced_spatial + (cfg.conv_filters[-1],))
    up = ops.upsample1d if cfg.ndim == 1 else ops.upsample2d
    convt = ops.conv1d_transpose if cfg.ndim == 1 else ops.conv2d_transpose
    h = up(h, cfg.pool)
    h = ops.relu(convt(h, params["dec.convt1.w"], params["dec.convt1.b"], stride=cfg.conv_stride))
    h = up(h, cfg.pool)
    h = convt(h, params["dec.convt2.w"], params["dec.convt2.b"], stride=cfg.conv_stride)
    return ops.reshape(h, (batch, steps) + cfg.spatial)

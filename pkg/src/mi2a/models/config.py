"""Architecture configuration and an independent parameter-count oracle."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

EVOLVERS = ("mi2a", "luong", "cran")


@dataclass
class ModelConfig:
    """Hyperparameters of the autoencoder + evolver stack.

    The published 1D reference is the default: two strided convs with
    max-pooling, dense layers 512 -> 128 -> 64 -> r, mirrored decoder, and
    a two-layer LSTM encoder/decoder evolver with 32 hidden units.
    """

    spatial: tuple[int, ...] = (256,)
    latent_dim: int = 2
    hidden_units: int = 32
    derivative_kernel: int = 3
    evolver: str = "mi2a"
    conv_filters: tuple[int, int] = (64, 32)
    conv_kernel: int = 5
    conv_stride: int = 2
    pool: int = 2
    dense_units: tuple[int, int] = (128, 64)

    def __post_init__(self):
        self.spatial = tuple(int(s) for s in np.atleast_1d(self.spatial))
        self.conv_filters = tuple(self.conv_filters)
        self.dense_units = tuple(self.dense_units)
        if self.evolver not in EVOLVERS:
            raise ValueError(f"evolver must be one of {EVOLVERS}, got {self.evolver!r}")
        if len(self.spatial) not in (1, 2):
            raise ValueError("only 1D and 2D fields are supported")

    @property
    def ndim(self) -> int:
        return len(self.spatial)

    @property
    def reduced_spatial(self) -> tuple[int, ...]:
        """Spatial extents after conv/pool/conv/pool (encoder side)."""
        dims = []
        for d in self.spatial:
            for _ in self.conv_filters:
                d = -(-d // self.conv_stride)  # same-padding conv
                d = d // self.pool
            dims.append(d)
        return tuple(dims)

    @property
    def flatten_size(self) -> int:
        return int(np.prod(self.reduced_spatial)) * self.conv_filters[-1]

    def validate_decoder(self) -> None:
        """The mirrored decoder needs every downsampling stage to be exact."""
        factor = (self.conv_stride * self.pool) ** len(self.conv_filters)
        for d in self.spatial:
            if d % factor:
                raise ValueError(
                    f"spatial extent {d} not divisible by {factor}; the decoder "
                    "cannot mirror the encoder exactly"
                )

    def to_dict(self) -> dict:
        return {
            "spatial": list(self.spatial),
            "latent_dim": self.latent_dim,
            "hidden_units": self.hidden_units,
            "derivative_kernel": self.derivative_kernel,
            "evolver": self.evolver,
            "conv_filters": list(self.conv_filters),
            "conv_kernel": self.conv_kernel,
            "conv_stride": self.conv_stride,
            "pool": self.pool,
            "dense_units": list(self.dense_units),
        }

    @staticmethod
    def from_dict(d: dict) -> "ModelConfig":
        return ModelConfig(
            spatial=tuple(d["spatial"]),
            latent_dim=d["latent_dim"],
            hidden_units=d["hidden_units"],
            derivative_kernel=d["derivative_kernel"],
            evolver=d["evolver"],
            conv_filters=tuple(d["conv_filters"]),
            conv_kernel=d["conv_kernel"],
            conv_stride=d["conv_stride"],
            pool=d["pool"],
            dense_units=tuple(d["dense_units"]),
        )


def _lstm_count(n_in: int, units: int) -> int:
    return 4 * (units * (n_in + units) + units)


def parameter_counts(config: ModelConfig) -> dict[str, int]:
    """Per-layer trainable parameter counts derived purely from the config.

    Intentionally independent of the allocation code so it can serve as an
    oracle for the parameter store.
    """
    k = config.conv_kernel
    taps = k if config.ndim == 1 else k * k
    f1, f2 = config.conv_filters
    d1, d2 = config.dense_units
    r = config.latent_dim
    p = config.hidden_units
    flat = config.flatten_size

    counts = {
        "enc.conv1": taps * 1 * f1 + f1,
        "enc.conv2": taps * f1 * f2 + f2,
        "enc.dense1": flat * d1 + d1,
        "enc.dense2": d1 * d2 + d2,
        "enc.latent": d2 * r + r,
        "dec.dense1": r * d2 + d2,
        "dec.dense2": d2 * d1 + d1,
        "dec.dense3": d1 * flat + flat,
        "dec.convt1": taps * f2 * f1 + f1,
        "dec.convt2": taps * f1 * 1 + 1,
        "evo.lstm_enc1": _lstm_count(r, p),
        "evo.lstm_enc2": _lstm_count(p, p),
        "evo.lstm_dec1": _lstm_count(p, p),
        "evo.lstm_dec2": _lstm_count(p, p),
        "evo.out": p * r + r,
    }
    if config.evolver in ("mi2a", "luong"):
        counts["evo.attn"] = p * p + p
    if config.evolver == "mi2a":
        counts["evo.deriv"] = config.derivative_kernel * p * p + p
    if config.evolver == "luong":
        counts["evo.combine"] = 2 * p * p + p
    return counts


def total_parameters(config: ModelConfig) -> int:
    return sum(parameter_counts(config).values())


def group_totals(config: ModelConfig) -> dict[str, int]:
    counts = parameter_counts(config)
    groups = {"encoder": 0, "decoder": 0, "evolver": 0}
    for name, n in counts.items():
        if name.startswith("enc."):
            groups["encoder"] += n
        elif name.startswith("dec."):
            groups["decoder"] += n
        else:
            groups["evolver"] += n
    return groups

"""Full model: parameter store plus encode/evolve/decode forward passes."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from ..autodiff import SeedTree, Tensor
from ..datasets.io import read_tensor, write_tensor
from . import autoencoder, evolver
from .config import ModelConfig


class Mi2aModel:
    """Encoder f, evolver Phi, decoder g with named float64 parameters."""

    def __init__(self, config: ModelConfig, seed: int = 0):
        config.validate_decoder()
        self.config = config
        self.seed = int(seed)
        seeds = SeedTree(self.seed)
        self.params: dict[str, Tensor] = {}
        self.params.update(autoencoder.build_encoder_params(config, seeds))
        self.params.update(autoencoder.build_decoder_params(config, seeds))
        self.params.update(evolver.build_evolver_params(config, seeds))
        self.fixed_attention_weights: np.ndarray | None = None

    # -- forward passes --------------------------------------------------

    def encode(self, x) -> Tensor:
        return autoencoder.encode(self.params, self.config, x)

    def decode(self, z) -> Tensor:
        return autoencoder.decode(self.params, self.config, z)

    def evolve(self, z):
        return evolver.evolve(
            self.params, self.config, z,
            fixed_attention_weights=self.fixed_attention_weights,
        )

    # -- parameter bookkeeping -------------------------------------------

    def n_parameters(self) -> int:
        return sum(int(p.data.size) for p in self.params.values())

    def group_parameter_counts(self) -> dict[str, int]:
        groups = {"encoder": 0, "decoder": 0, "evolver": 0}
        for name, p in self.params.items():
            key = {"enc": "encoder", "dec": "decoder", "evo": "evolver"}[name.split(".")[0]]
            groups[key] += int(p.data.size)
        return groups

    def zero_grads(self) -> None:
        for p in self.params.values():
            p.grad = None

    def grads(self) -> dict[str, np.ndarray]:
        return {k: p.grad for k, p in self.params.items() if p.grad is not None}

    def state_arrays(self) -> dict[str, np.ndarray]:
        return {k: p.data.copy() for k, p in self.params.items()}

    def load_state_arrays(self, arrays: dict[str, np.ndarray]) -> None:
        for k, p in self.params.items():
            p.data[...] = arrays[k]

    # -- persistence -------------------------------------------------------

    def save_params(self, directory) -> None:
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        manifest = {
            "config": self.config.to_dict(),
            "seed": self.seed,
            "layers": {k: list(p.data.shape) for k, p in self.params.items()},
        }
        (directory / "model.json").write_text(json.dumps(manifest, indent=2))
        for k, p in self.params.items():
            write_tensor(directory / f"{k}.mi2a", p.data)

    @staticmethod
    def load_params(directory) -> "Mi2aModel":
        directory = Path(directory)
        manifest = json.loads((directory / "model.json").read_text())
        model = Mi2aModel(ModelConfig.from_dict(manifest["config"]), seed=manifest["seed"])
        for k in model.params:
            model.params[k].data[...] = read_tensor(directory / f"{k}.mi2a")
        return model


def fixed_attention_override(model: Mi2aModel, weights) -> Mi2aModel:
    """Replace the learned attention with constant, data-independent weights.

    The context vector becomes the fixed combination sum_i w_i * h_i of the
    encoder states and no longer varies across decoding steps.
    """
    if model.config.evolver == "cran":
        raise ValueError("the cran evolver has no attention to override")
    model.fixed_attention_weights = np.asarray(weights, dtype=np.float64)
    return model

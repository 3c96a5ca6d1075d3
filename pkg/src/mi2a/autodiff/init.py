"""Seeded, splittable parameter initialization."""

from __future__ import annotations

import numpy as np


class SeedTree:
    """Deterministic per-name RNG streams derived from one root seed.

    Each distinct name gets an independent stream, so adding or removing a
    layer never perturbs the initialization of the others.
    """

    def __init__(self, seed: int):
        self.seed = int(seed)

    def stream(self, name: str) -> np.random.Generator:
        digest = np.frombuffer(name.encode("utf-8"), dtype=np.uint8)
        child = np.random.SeedSequence([self.seed, *digest.tolist()])
        return np.random.default_rng(child)


def glorot_uniform(shape: tuple[int, ...], fan_in: int, fan_out: int,
                   rng: np.random.Generator) -> np.ndarray:
    limit = np.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-limit, limit, size=shape)

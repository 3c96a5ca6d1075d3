"""Overlapping input/target windows with global min-max normalization.

From each trajectory of ``n_steps`` frames, every length-``2*window`` segment
(stride one) yields one sample: the first ``window`` frames are the input,
the following ``window`` frames the target, giving

    samples_per_trajectory = n_steps - 2*window + 1

Normalization uses the single global min/max over the whole dataset so all
parameter instances share one scale; the noisy input copy adds seeded
Gaussian perturbations after scaling (and may leave [0, 1]).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .io import SnapshotDataset


@dataclass
class TrainingPairs:
    x_clean: np.ndarray  # (n_samples, window, *spatial), in [0, 1]
    x_noisy: np.ndarray  # x_clean + Gaussian noise
    y: np.ndarray        # (n_samples, window, *spatial), the next `window` steps
    window: int
    samples_per_trajectory: int
    global_min: float
    global_max: float

    @property
    def n_samples(self) -> int:
        return self.x_clean.shape[0]

    @property
    def spatial_shape(self) -> tuple[int, ...]:
        return self.x_clean.shape[2:]


def normalize(values: np.ndarray, lo: float, hi: float) -> np.ndarray:
    return (values - lo) / (hi - lo)


def denormalize(values: np.ndarray, lo: float, hi: float) -> np.ndarray:
    return values * (hi - lo) + lo


def window_count(n_steps: int, window: int) -> int:
    if n_steps < 2 * window:
        raise ValueError(f"{n_steps} steps cannot hold paired windows of {window}")
    return n_steps - 2 * window + 1


def build_pairs(
    ds: SnapshotDataset,
    window: int,
    noise_mean: float = 0.0,
    noise_sd: float = 0.01,
    seed: int = 0,
) -> TrainingPairs:
    n_seg = window_count(ds.n_steps, window)
    scaled = normalize(ds.snapshots, ds.global_min, ds.global_max)

    n_samples = ds.n_params * n_seg
    x = np.empty((n_samples, window) + ds.spatial_shape)
    y = np.empty_like(x)
    k = 0
    for traj in scaled:
        for s in range(n_seg):
            x[k] = traj[s : s + window]
            y[k] = traj[s + window : s + 2 * window]
            k += 1

    rng = np.random.default_rng(seed)
    noisy = x + rng.normal(noise_mean, noise_sd, size=x.shape)
    return TrainingPairs(
        x_clean=x,
        x_noisy=noisy,
        y=y,
        window=window,
        samples_per_trajectory=n_seg,
        global_min=ds.global_min,
        global_max=ds.global_max,
    )

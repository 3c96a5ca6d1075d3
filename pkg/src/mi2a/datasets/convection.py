"""Linear advection benchmark: a narrow Gaussian translating at speed mu.

The exact solution ``u(x, t) = f(x - mu*t)`` is sampled on a uniform grid,
so the generator is purely analytic.
"""

from __future__ import annotations

import numpy as np

from .io import SnapshotDataset

SPEED_RANGE = (0.775, 1.25)
DEFAULT_VARIANCE = 1e-4


def gaussian_profile(x: np.ndarray, variance: float = DEFAULT_VARIANCE) -> np.ndarray:
    return np.exp(-(x**2) / (2.0 * variance)) / np.sqrt(2.0 * np.pi * variance)


def training_speeds(n: int = 20) -> np.ndarray:
    return np.linspace(*SPEED_RANGE, n)


def test_speeds(train: np.ndarray | None = None) -> np.ndarray:
    """Midpoints of consecutive training speeds (19 values for the default grid)."""
    if train is None:
        train = training_speeds()
    train = np.asarray(train)
    return 0.5 * (train[:-1] + train[1:])


def gen_linear_convection(
    speeds,
    n_points: int = 256,
    n_steps: int = 200,
    t_max: float = 1.0,
    variance: float = DEFAULT_VARIANCE,
) -> SnapshotDataset:
    speeds = np.atleast_1d(np.asarray(speeds, dtype=np.float64))
    x = np.linspace(0.0, 1.0, n_points)
    t = np.linspace(0.0, t_max, n_steps)
    snaps = np.empty((speeds.size, n_steps, n_points))
    for i, mu in enumerate(speeds):
        snaps[i] = gaussian_profile(x[None, :] - mu * t[:, None], variance)
    grid = {
        "dx": float(x[1] - x[0]),
        "dt": float(t[1] - t[0]),
        "extent": [0.0, 1.0],
        "t_max": float(t_max),
        "variance": float(variance),
    }
    return SnapshotDataset.from_snapshots(speeds, snaps, grid, benchmark="convection")

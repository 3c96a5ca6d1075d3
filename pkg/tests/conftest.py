import numpy as np
import pytest

from mi2a.datasets import SnapshotDataset, build_pairs
from mi2a.models import ModelConfig
from mi2a.training import RunConfig


def make_tiny_dataset(n_traj: int = 2, n_steps: int = 12, n_points: int = 32,
                      seed: int = 0) -> SnapshotDataset:
    """Small translating-bump trajectories for fast training tests."""
    rng = np.random.default_rng(seed)
    x = np.linspace(0.0, 1.0, n_points)
    t = np.linspace(0.0, 1.0, n_steps)
    speeds = np.linspace(0.8, 1.2, n_traj)
    snaps = np.empty((n_traj, n_steps, n_points))
    for i, mu in enumerate(speeds):
        snaps[i] = np.exp(-((x[None, :] - 0.2 - mu * 0.5 * t[:, None]) ** 2) / 8e-3)
    snaps += 0.01 * rng.standard_normal(snaps.shape) * 0  # keep deterministic
    return SnapshotDataset.from_snapshots(speeds, snaps, {"dx": float(x[1] - x[0])},
                                          benchmark="convection")


@pytest.fixture(scope="session")
def tiny_ds():
    return make_tiny_dataset()


@pytest.fixture(scope="session")
def tiny_pairs(tiny_ds):
    return build_pairs(tiny_ds, window=3, noise_sd=0.01, seed=0)


def tiny_run_config(evolver="mi2a", loss_mode="decomposed", epochs=3, seed=0,
                    **kw) -> RunConfig:
    model = ModelConfig(spatial=(32,), latent_dim=2, hidden_units=8,
                        derivative_kernel=3, evolver=evolver)
    return RunConfig(model=model, loss_mode=loss_mode, epochs=epochs,
                     batch_size=4, seed=seed, window=3, **kw)

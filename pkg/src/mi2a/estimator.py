"""Scikit-learn style facade over the full train/rollout pipeline.

``WaveForecaster`` follows the estimator protocol (constructor stores
hyperparameters verbatim, ``fit`` returns self, ``get_params``/``set_params``
via ``BaseEstimator``), so it composes with sklearn tooling such as
``clone`` and grid search.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator

from .datasets.io import SnapshotDataset
from .datasets.windows import build_pairs, denormalize, normalize
from .evaluation import rollout
from .models import ModelConfig
from .training import RunConfig, train
from .validation import check_fitted, check_seed_windows, check_snapshot_array


class WaveForecaster(BaseEstimator):
    """Reduced-order surrogate: fit on snapshot trajectories, predict rollouts.

    Parameters mirror the training configuration; see :class:`RunConfig`.
    ``evolver`` selects the latent time-stepper ('mi2a', 'luong' or 'cran'),
    ``loss_mode`` picks between the dispersion/dissipation-decomposed evolver
    objective and plain MSE.
    """

    def __init__(self, latent_dim=2, hidden_units=32, derivative_kernel=3,
                 evolver="mi2a", loss_mode="decomposed", evolver_weight=0.5,
                 dispersion_weight=0.7, window=10, epochs=100, batch_size=16,
                 learning_rate=1e-3, noise_mean=0.0, noise_sd=0.01, seed=0):
        self.latent_dim = latent_dim
        self.hidden_units = hidden_units
        self.derivative_kernel = derivative_kernel
        self.evolver = evolver
        self.loss_mode = loss_mode
        self.evolver_weight = evolver_weight
        self.dispersion_weight = dispersion_weight
        self.window = window
        self.epochs = epochs
        self.batch_size = batch_size
        self.learning_rate = learning_rate
        self.noise_mean = noise_mean
        self.noise_sd = noise_sd
        self.seed = seed

    def _run_config(self, spatial: tuple[int, ...]) -> RunConfig:
        model = ModelConfig(
            spatial=spatial,
            latent_dim=self.latent_dim,
            hidden_units=self.hidden_units,
            derivative_kernel=self.derivative_kernel,
            evolver=self.evolver,
        )
        return RunConfig(
            model=model,
            evolver_weight=self.evolver_weight,
            dispersion_weight=self.dispersion_weight,
            loss_mode=self.loss_mode,
            epochs=self.epochs,
            batch_size=self.batch_size,
            learning_rate=self.learning_rate,
            seed=self.seed,
            noise_mean=self.noise_mean,
            noise_sd=self.noise_sd,
            window=self.window,
        )

    def fit(self, X, y=None):
        """Train on snapshots (n_trajectories, n_steps, *spatial) or a dataset."""
        if isinstance(X, SnapshotDataset):
            ds = X
        else:
            X = check_snapshot_array(X, self.window)
            ds = SnapshotDataset.from_snapshots(list(range(X.shape[0])), X)
        pairs = build_pairs(ds, self.window, self.noise_mean, self.noise_sd,
                            seed=self.seed)
        cfg = self._run_config(ds.spatial_shape)
        result = train(cfg, pairs)
        self.checkpoint_ = result.checkpoint
        self.history_ = result.history
        self.n_features_in_ = int(np.prod(ds.spatial_shape))
        return self

    def predict(self, X, n_horizons: int = 1):
        """Autoregressive forecasts from seed windows in physical units.

        ``X`` is (window, *spatial) or (n, window, *spatial); the return is
        (n, n_horizons*window, *spatial).
        """
        check_fitted(self)
        ckpt = self.checkpoint_
        spatial = ckpt.run_config.model.spatial
        X = check_seed_windows(X, self.window, spatial)
        lo, hi = ckpt.global_min, ckpt.global_max
        out = np.empty((X.shape[0], n_horizons * self.window) + spatial)
        for i, seed_window in enumerate(X):
            res = rollout(ckpt.model, normalize(seed_window, lo, hi), n_horizons)
            if not res.ok:
                raise FloatingPointError(
                    f"rollout diverged after {res.horizons_completed} horizons"
                )
            out[i] = denormalize(res.trajectory, lo, hi)
        return out

    def score(self, X, y):
        """Negative MSE of one-horizon predictions against ``y``."""
        pred = self.predict(X, n_horizons=1)
        y = np.asarray(y, dtype=np.float64)
        if pred.shape != y.shape:
            raise ValueError(f"shape mismatch {pred.shape} vs {y.shape}")
        return -float(((pred - y) ** 2).mean())

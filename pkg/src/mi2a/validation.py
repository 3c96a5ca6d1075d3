"""Input validation helpers shared by the estimator and CLI layers."""

from __future__ import annotations

import numpy as np


def check_snapshot_array(X, window: int) -> np.ndarray:
    """Validate a snapshot tensor (n_trajectories, n_steps, *spatial).

    Returns a float64 array. Raises ValueError for wrong rank, non-finite
    entries, too few steps for paired windows, or a degenerate value range.
    """
    X = np.asarray(X, dtype=np.float64)
    if X.ndim not in (3, 4):
        raise ValueError(
            f"expected (n_trajectories, n_steps, *spatial) with 1D or 2D fields, "
            f"got array of rank {X.ndim}"
        )
    if not np.isfinite(X).all():
        raise ValueError("snapshots contain NaN/Inf")
    if X.shape[1] < 2 * window:
        raise ValueError(
            f"{X.shape[1]} time steps cannot hold paired windows of length {window}"
        )
    if not X.max() > X.min():
        raise ValueError("degenerate snapshots: constant field cannot be normalized")
    return X


def check_seed_windows(X, window: int, spatial: tuple[int, ...]) -> np.ndarray:
    """Validate rollout seeds shaped (window, *spatial) or (n, window, *spatial)."""
    X = np.asarray(X, dtype=np.float64)
    if X.shape == (window,) + spatial:
        X = X[None]
    if X.shape[1:] != (window,) + spatial:
        raise ValueError(
            f"expected seed windows (n, {window}, {', '.join(map(str, spatial))}), "
            f"got {X.shape}"
        )
    if not np.isfinite(X).all():
        raise ValueError("seed windows contain NaN/Inf")
    return X


def check_fitted(estimator, attribute: str = "checkpoint_") -> None:
    if not hasattr(estimator, attribute):
        raise RuntimeError(
            f"{type(estimator).__name__} is not fitted yet; call fit() first"
        )

"""Autoregressive rollout and error metrics against full-order solutions."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .autodiff import no_grad
from .datasets.io import SnapshotDataset
from .datasets.windows import denormalize, normalize
from .training import Checkpoint


@dataclass
class MetricSeries:
    """Per-time-step and time-averaged error records."""

    mse: np.ndarray
    mae: np.ndarray
    linf: np.ndarray

    @property
    def avg_mse(self) -> float:
        return float(self.mse.mean())

    @property
    def avg_mae(self) -> float:
        return float(self.mae.mean())

    @property
    def avg_linf(self) -> float:
        return float(self.linf.mean())

    def value(self, name: str, time_averaged: bool = True):
        if name not in ("mse", "mae", "linf"):
            raise KeyError(name)
        return getattr(self, f"avg_{name}") if time_averaged else getattr(self, name)


def metrics(pred: np.ndarray, truth: np.ndarray) -> MetricSeries:
    """Spatial MSE/MAE/max-error per step; shapes (T, *spatial) must match."""
    pred = np.asarray(pred, dtype=np.float64)
    truth = np.asarray(truth, dtype=np.float64)
    if pred.shape != truth.shape:
        raise ValueError(f"shape mismatch {pred.shape} vs {truth.shape}")
    diff = (pred - truth).reshape(pred.shape[0], -1)
    return MetricSeries(
        mse=(diff**2).mean(axis=1),
        mae=np.abs(diff).mean(axis=1),
        linf=np.abs(diff).max(axis=1),
    )


@dataclass
class RolloutResult:
    trajectory: np.ndarray  # (n_horizons * window, *spatial)
    window: int
    horizons_completed: int
    ok: bool

    def horizon_slice(self, h: int) -> slice:
        return slice(self.window * h, self.window * (h + 1))


def rollout(model, seed_window: np.ndarray, n_horizons: int) -> RolloutResult:
    """Feed the model its own predictions for ``n_horizons`` windows.

    ``seed_window`` is (window, *spatial) in the model's (normalized) units.
    A non-finite prediction truncates the rollout and flags the result.
    """
    seed_window = np.asarray(seed_window, dtype=np.float64)
    window = seed_window.shape[0]
    chunks: list[np.ndarray] = []
    current = seed_window[None]
    ok = True
    completed = 0
    with no_grad():
        for _ in range(n_horizons):
            z = model.encode(current)
            z_next, _ = model.evolve(z)
            pred = model.decode(z_next).data[0]
            if not np.isfinite(pred).all():
                ok = False
                break
            chunks.append(pred)
            completed += 1
            current = pred[None]
    if chunks:
        trajectory = np.concatenate(chunks, axis=0)
    else:
        trajectory = np.empty((0,) + seed_window.shape[1:])
    return RolloutResult(trajectory=trajectory, window=window,
                         horizons_completed=completed, ok=ok)


def horizon_mse(pred: np.ndarray, truth: np.ndarray, window: int) -> np.ndarray:
    """MSE aggregated per prediction horizon (blocks of ``window`` steps)."""
    series = metrics(pred, truth)
    n = len(series.mse) // window
    return series.mse[: n * window].reshape(n, window).mean(axis=1)


def evaluate_checkpoint(ckpt: Checkpoint, test_ds: SnapshotDataset,
                        n_horizons: int | None = None,
                        physical_units: bool = False) -> dict[float, MetricSeries]:
    """Roll out from each test trajectory's leading window and score it.

    Test snapshots are normalized with the checkpoint's training bounds; set
    ``physical_units`` to score in denormalized units instead (tabulated
    values use the normalized scale).
    """
    window = ckpt.run_config.window
    lo, hi = ckpt.global_min, ckpt.global_max
    if n_horizons is None:
        n_horizons = (test_ds.n_steps - window) // window
    results: dict[float, MetricSeries] = {}
    for param, traj in zip(test_ds.params, test_ds.snapshots):
        scaled = normalize(traj, lo, hi)
        res = rollout(ckpt.model, scaled[:window], n_horizons)
        steps = res.trajectory.shape[0]
        truth = scaled[window : window + steps]
        pred = res.trajectory
        if physical_units:
            pred = denormalize(pred, lo, hi)
            truth = denormalize(truth, lo, hi)
        results[float(param)] = metrics(pred, truth)
    return results


def comparison_table(checkpoints: dict[str, Checkpoint], test_ds: SnapshotDataset,
                     metric_names: tuple[str, ...] = ("mse", "linf"),
                     n_horizons: int | None = None,
                     physical_units: bool = False) -> list[dict]:
    """Time-averaged metric rows per test parameter across model variants.

    The strictly smallest cell per (row, metric) is flagged in
    ``best_<metric>``; exact ties flag nothing.
    """
    if not checkpoints:
        raise ValueError("no checkpoints given")
    for label, ckpt in checkpoints.items():
        if ckpt is None:
            raise FileNotFoundError(f"missing checkpoint for {label!r}")
    per_label = {
        label: evaluate_checkpoint(ckpt, test_ds, n_horizons, physical_units)
        for label, ckpt in checkpoints.items()
    }
    rows = []
    for param in test_ds.params:
        row: dict = {"param": float(param)}
        for name in metric_names:
            values = {
                label: per_label[label][float(param)].value(name)
                for label in checkpoints
            }
            for label, val in values.items():
                row[f"{label}_{name}"] = val
            best = min(values, key=values.get)
            others = [v for k, v in values.items() if k != best]
            row[f"best_{name}"] = best if all(values[best] < v for v in others) else ""
        rows.append(row)
    return rows


def write_table_csv(rows: list[dict], path) -> None:
    if not rows:
        raise ValueError("empty table")
    cols = list(rows[0].keys())
    lines = [",".join(cols)]
    for row in rows:
        lines.append(",".join(
            f"{row[c]!r}" if isinstance(row[c], float) else str(row[c]) for c in cols
        ))
    Path(path).write_text("\n".join(lines) + "\n")


def write_metrics_csv(series: MetricSeries, path, window: int | None = None) -> None:
    """Per-step error CSV (step index is relative to the end of the seed)."""
    lines = ["step,mse,mae,linf"]
    for i in range(len(series.mse)):
        lines.append(
            f"{i + 1},{float(series.mse[i])!r},{float(series.mae[i])!r},"
            f"{float(series.linf[i])!r}"
        )
    Path(path).write_text("\n".join(lines) + "\n")

"""Viscous Burgers benchmark with its closed-form solution.

    u(x, t) = (x / (t+1)) / (1 + sqrt((t+1)/t0) * exp(Re * x^2 / (4t+4)))

with ``t0 = exp(Re/8)``. The quotient is evaluated in log space: the raw
exponential overflows float64 near Re = 4000 (``exp(Re/8)`` alone is
exp(500)), while ``x/(t+1) * logistic(-a)`` with
``a = Re*x^2/(4t+4) + 0.5*ln((t+1)/t0)`` stays finite and smooth.
"""

from __future__ import annotations

import numpy as np

from .io import SnapshotDataset

REYNOLDS_RANGE = (1000.0, 4000.0)
TEST_REYNOLDS = (1100.0, 2600.0, 4100.0)


def training_reynolds(n: int = 7) -> np.ndarray:
    return np.linspace(*REYNOLDS_RANGE, n)


def _stable_logistic(a: np.ndarray) -> np.ndarray:
    """1 / (1 + exp(a)) without overflow for large |a|."""
    out = np.empty_like(a)
    pos = a >= 0
    out[pos] = np.exp(-a[pos]) / (1.0 + np.exp(-a[pos]))
    out[~pos] = 1.0 / (1.0 + np.exp(a[~pos]))
    return out


def burgers_solution(x: np.ndarray, t: np.ndarray, reynolds: float) -> np.ndarray:
    """Exact solution sampled at the outer product of ``t`` and ``x``."""
    xx = np.asarray(x)[None, :]
    tt = np.asarray(t)[:, None]
    log_t0 = reynolds / 8.0
    a = reynolds * xx**2 / (4.0 * tt + 4.0) + 0.5 * (np.log(tt + 1.0) - log_t0)
    return xx / (tt + 1.0) * _stable_logistic(a)


def gen_burgers(
    reynolds,
    n_points: int = 256,
    n_steps: int = 200,
    t_max: float = 2.0,
) -> SnapshotDataset:
    reynolds = np.atleast_1d(np.asarray(reynolds, dtype=np.float64))
    x = np.linspace(0.0, 1.0, n_points)
    t = np.linspace(0.0, t_max, n_steps)
    snaps = np.empty((reynolds.size, n_steps, n_points))
    for i, re in enumerate(reynolds):
        snaps[i] = burgers_solution(x, t, re)
    grid = {
        "dx": float(x[1] - x[0]),
        "dt": float(t[1] - t[0]),
        "extent": [0.0, 1.0],
        "t_max": float(t_max),
    }
    return SnapshotDataset.from_snapshots(reynolds, snaps, grid, benchmark="burgers")

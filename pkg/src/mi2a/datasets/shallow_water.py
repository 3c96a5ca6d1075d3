"""Saint-Venant shallow-water solver (non-conservative form, solid walls).

Explicit forward-Euler time stepping on a collocated grid:

* continuity in flux form with interface-averaged mass fluxes, which makes
  the discrete total water volume telesco­pe to zero change exactly (wall
  fluxes vanish),
* upwinded self-advection and centered pressure gradient / Laplacian in the
  momentum equations,
* no-slip walls (u = v = 0 on the boundary ring), zero-normal-flux for h.

The stored frames are the height deviation ``h``; internal substepping keeps
the scheme inside its CFL limit regardless of the frame spacing.
"""

from __future__ import annotations

import numpy as np

from .io import SnapshotDataset


class SolverInstabilityError(RuntimeError):
    """Blow-up detected; carries the CFL diagnostic that triggered it."""


def stable_dt(dx: float, dy: float, gravity: float, depth: float,
              amplitude: float, viscosity: float, safety: float = 0.35) -> float:
    wave_speed = np.sqrt(gravity * (depth + amplitude)) * np.sqrt(2.0)
    dt_wave = min(dx, dy) / wave_speed
    dt_visc = min(dx, dy) ** 2 / (4.0 * viscosity) if viscosity > 0 else np.inf
    return safety * min(dt_wave, dt_visc)


def plane_wave(nx: int, ny: int, position: float, amplitude: float = 0.1,
               width: float = 0.08) -> np.ndarray:
    """Gaussian ridge across the y axis centred at ``position`` along x."""
    x = np.linspace(0.0, 1.0, nx)
    return amplitude * np.exp(-(((x - position) / width) ** 2))[:, None] * np.ones((1, ny))


def training_positions(n: int = 20, lo: float = 0.2, hi: float = 0.8) -> np.ndarray:
    return np.linspace(lo, hi, n)


def test_positions(train: np.ndarray | None = None, n: int = 5) -> np.ndarray:
    """Evenly chosen midpoints of consecutive training positions."""
    if train is None:
        train = training_positions()
    train = np.asarray(train)
    mid = 0.5 * (train[:-1] + train[1:])
    if n >= mid.size:
        return mid
    picks = np.linspace(0, mid.size - 1, n).round().astype(int)
    return mid[picks]


def simulate(h0: np.ndarray, n_steps: int = 100, t_max: float = 1.0,
             gravity: float = 1.0, depth: float = 1.0, viscosity: float = 1e-3,
             max_dt: float | None = None, blowup_factor: float = 10.0,
             safety: float = 0.35) -> np.ndarray:
    """Integrate from rest (u = v = 0) and return (n_steps, nx, ny) h-frames.

    ``safety`` scales the CFL estimate; values near or above one disable the
    margin and rely on the runtime blow-up guard alone.
    """
    nx, ny = h0.shape
    dx = 1.0 / (nx - 1)
    dy = 1.0 / (ny - 1)
    amp = max(float(np.abs(h0).max()), 1e-12)
    dt_lim = stable_dt(dx, dy, gravity, depth, amp, viscosity, safety=safety)
    dt_sub = dt_lim if max_dt is None else min(dt_lim, float(max_dt))
    if max_dt is not None and max_dt > dt_lim:
        raise ValueError(
            f"requested dt {max_dt:g} exceeds stability estimate {dt_lim:g} "
            f"(dx={dx:g}, g={gravity:g}, H={depth:g}, nu={viscosity:g})"
        )

    h = h0.astype(np.float64).copy()
    u = np.zeros_like(h)
    v = np.zeros_like(h)
    frames = np.empty((n_steps, nx, ny))
    frames[0] = h
    frame_dt = t_max / (n_steps - 1)
    n_sub = max(1, int(np.ceil(frame_dt / dt_sub)))
    dt = frame_dt / n_sub

    for frame in range(1, n_steps):
        for _ in range(n_sub):
            h, u, v = _step(h, u, v, dt, dx, dy, gravity, depth, viscosity)
        if np.abs(h).max() > blowup_factor * amp or not np.isfinite(h).all():
            cfl = np.sqrt(gravity * depth) * dt / min(dx, dy)
            raise SolverInstabilityError(
                f"|h| exceeded {blowup_factor:g}x initial amplitude at frame {frame} "
                f"(dt={dt:g}, wave CFL={cfl:.3f})"
            )
        frames[frame] = h
    return frames


def _step(h, u, v, dt, dx, dy, gravity, depth, viscosity):
    eta = depth + h

    # continuity: interface fluxes, zero through the walls
    fx = 0.25 * (eta[:-1, :] + eta[1:, :]) * (u[:-1, :] + u[1:, :])
    fy = 0.25 * (eta[:, :-1] + eta[:, 1:]) * (v[:, :-1] + v[:, 1:])
    div = np.zeros_like(h)
    div[:-1, :] += fx / dx
    div[1:, :] -= fx / dx
    div[:, :-1] += fy / dy
    div[:, 1:] -= fy / dy
    h_new = h - dt * div

    ui = u[1:-1, 1:-1]
    vi = v[1:-1, 1:-1]

    def upwind(q, along_x, sign_field):
        if along_x:
            back = (q[1:-1, 1:-1] - q[:-2, 1:-1]) / dx
            fwd = (q[2:, 1:-1] - q[1:-1, 1:-1]) / dx
        else:
            back = (q[1:-1, 1:-1] - q[1:-1, :-2]) / dy
            fwd = (q[1:-1, 2:] - q[1:-1, 1:-1]) / dy
        return np.where(sign_field > 0, back, fwd)

    def laplacian(q):
        return (q[2:, 1:-1] - 2 * q[1:-1, 1:-1] + q[:-2, 1:-1]) / dx**2 + (
            q[1:-1, 2:] - 2 * q[1:-1, 1:-1] + q[1:-1, :-2]
        ) / dy**2

    gh_x = (h[2:, 1:-1] - h[:-2, 1:-1]) / (2 * dx)
    gh_y = (h[1:-1, 2:] - h[1:-1, :-2]) / (2 * dy)

    u_new = u.copy()
    v_new = v.copy()
    u_new[1:-1, 1:-1] = ui + dt * (
        -ui * upwind(u, True, ui)
        - vi * upwind(u, False, vi)
        - gravity * gh_x
        + viscosity * laplacian(u)
    )
    v_new[1:-1, 1:-1] = vi + dt * (
        -ui * upwind(v, True, ui)
        - vi * upwind(v, False, vi)
        - gravity * gh_y
        + viscosity * laplacian(v)
    )
    return h_new, u_new, v_new


def gen_shallow_water(
    positions,
    nx: int = 64,
    ny: int = 64,
    n_steps: int = 100,
    t_max: float = 1.0,
    gravity: float = 1.0,
    depth: float = 1.0,
    viscosity: float = 1e-3,
    amplitude: float = 0.1,
    width: float = 0.08,
    max_dt: float | None = None,
    safety: float = 0.35,
) -> SnapshotDataset:
    positions = np.atleast_1d(np.asarray(positions, dtype=np.float64))
    snaps = np.empty((positions.size, n_steps, nx, ny))
    for i, pos in enumerate(positions):
        h0 = plane_wave(nx, ny, pos, amplitude, width)
        snaps[i] = simulate(
            h0, n_steps=n_steps, t_max=t_max, gravity=gravity, depth=depth,
            viscosity=viscosity, max_dt=max_dt, safety=safety,
        )
    grid = {
        "dx": 1.0 / (nx - 1),
        "dy": 1.0 / (ny - 1),
        "dt": t_max / (n_steps - 1),
        "extent": [0.0, 1.0, 0.0, 1.0],
        "t_max": float(t_max),
        "gravity": gravity,
        "depth": depth,
        "viscosity": viscosity,
        "amplitude": amplitude,
        "width": width,
    }
    return SnapshotDataset.from_snapshots(positions, snaps, grid, benchmark="shallow-water")

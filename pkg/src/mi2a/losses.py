"""Training objectives: denoising reconstruction, evolver prediction, and the
dispersion/dissipation split of the mean-squared error.

The split is exact for population statistics over the spatial axis:

    mse = (sigma_y - sigma_x)^2 + (mean_y - mean_x)^2 + 2*(sigma_y*sigma_x - cov)

with the first two terms measuring amplitude/mean mismatch (dissipation) and
the last measuring decorrelation (dispersion, ``2*(1-rho)*sigma_y*sigma_x``).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .autodiff import Tensor, ops

# Variance floor: keeps sqrt differentiable and the correlation well defined
# for (near-)constant fields without disturbing the identity at 1e-10 level.
_VAR_FLOOR = 1e-24


@dataclass
class DecomposedError:
    """Per-time-step and averaged dissipation/dispersion components."""

    total: float
    dissipation: float
    dispersion: float
    per_step_total: np.ndarray
    per_step_dissipation: np.ndarray
    per_step_dispersion: np.ndarray


def decompose_mse(y, x) -> DecomposedError:
    """Split the MSE between fields along the last (spatial) axis.

    ``y`` is the reference field, ``x`` the prediction; leading axes, if any,
    are treated as time steps/batch entries and averaged for the scalars.
    """
    y = np.asarray(y, dtype=np.float64)
    x = np.asarray(x, dtype=np.float64)
    if y.shape != x.shape:
        raise ValueError(f"shape mismatch {y.shape} vs {x.shape}")
    if y.shape[-1] < 2:
        raise ValueError("need at least two spatial points")
    my = y.mean(axis=-1)
    mx = x.mean(axis=-1)
    cy = y - my[..., None]
    cx = x - mx[..., None]
    sy = np.sqrt((cy * cy).mean(axis=-1) + _VAR_FLOOR)
    sx = np.sqrt((cx * cx).mean(axis=-1) + _VAR_FLOOR)
    cov = (cy * cx).mean(axis=-1)
    diss = (sy - sx) ** 2 + (my - mx) ** 2
    # Cauchy-Schwarz guarantees sy*sx >= cov; clamp the epsilon-scale
    # cancellation noise so the component is never reported negative
    disp = np.maximum(2.0 * (sy * sx - cov), 0.0)
    total = ((y - x) ** 2).mean(axis=-1)
    return DecomposedError(
        total=float(total.mean()),
        dissipation=float(diss.mean()),
        dispersion=float(disp.mean()),
        per_step_total=total,
        per_step_dissipation=diss,
        per_step_dispersion=disp,
    )


def ae_loss(x_hat: Tensor, x_ref) -> Tensor:
    """Mean squared reconstruction error over all elements."""
    ref = x_ref if isinstance(x_ref, Tensor) else Tensor(np.asarray(x_ref, dtype=np.float64))
    if x_hat.shape != ref.shape:
        raise ValueError(f"shape mismatch {x_hat.shape} vs {ref.shape}")
    return ops.mean(ops.square(ops.sub(x_hat, ref)))


def plain_mse_evolver_loss(pred: Tensor, target) -> Tensor:
    """Baseline evolver objective: plain MSE against the target window."""
    return ae_loss(pred, target)


def evolver_loss(pred: Tensor, target, dispersion_weight: float) -> Tensor:
    """Weighted dispersion/dissipation objective, differentiable in ``pred``.

    Fields are flattened over space per time step; the decomposition is
    computed per step and averaged over batch and time.
    """
    if not 0.0 <= dispersion_weight <= 1.0:
        raise ValueError("dispersion_weight must lie in [0, 1]")
    tgt = np.asarray(target, dtype=np.float64)
    if pred.shape != tgt.shape:
        raise ValueError(f"shape mismatch {pred.shape} vs {tgt.shape}")
    batch, steps = tgt.shape[0], tgt.shape[1]
    n_space = int(np.prod(tgt.shape[2:]))
    x = ops.reshape(pred, (batch, steps, n_space))
    y = tgt.reshape(batch, steps, n_space)

    my = y.mean(axis=-1, keepdims=True)
    cy = y - my
    sy = np.sqrt((cy * cy).mean(axis=-1) + _VAR_FLOOR)

    mx = ops.mean(x, axis=-1, keepdims=True)
    cx = ops.sub(x, mx)
    varx = ops.mean(ops.square(cx), axis=-1)
    sx = ops.sqrt(ops.add(varx, Tensor(np.full(varx.shape, _VAR_FLOOR))))
    cov = ops.mean(ops.mul(cx, Tensor(cy)), axis=-1)

    mean_gap = ops.sub(ops.reshape(mx, (batch, steps)), Tensor(my[..., 0]))
    sigma_gap = ops.sub(Tensor(sy), sx)
    diss = ops.add(ops.square(sigma_gap), ops.square(mean_gap))
    disp = ops.scale(ops.sub(ops.mul(Tensor(sy), sx), cov), 2.0)
    return ops.add(
        ops.scale(ops.mean(disp), dispersion_weight),
        ops.scale(ops.mean(diss), 1.0 - dispersion_weight),
    )


def total_loss(ae: Tensor, evolver: Tensor, evolver_weight: float) -> Tensor:
    """Convex combination of reconstruction and evolver losses."""
    if not 0.0 <= evolver_weight <= 1.0:
        raise ValueError("evolver_weight must lie in [0, 1]")
    return ops.add(ops.scale(ae, 1.0 - evolver_weight), ops.scale(evolver, evolver_weight))

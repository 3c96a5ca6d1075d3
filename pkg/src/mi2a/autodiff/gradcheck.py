"""Central finite-difference verification of analytic gradients."""

from __future__ import annotations

import numpy as np

from .tensor import Tensor


def numerical_gradient(f, t: Tensor, h: float = 1e-5) -> np.ndarray:
    """Central-difference gradient of scalar-valued ``f`` w.r.t. ``t``."""
    base = t.data.copy()
    flat = t.data.reshape(-1)
    grad = np.zeros_like(flat)
    for i in range(flat.size):
        orig = flat[i]
        flat[i] = orig + h
        fp = float(f().data)
        flat[i] = orig - h
        fm = float(f().data)
        flat[i] = orig
        grad[i] = (fp - fm) / (2.0 * h)
    t.data[...] = base
    return grad.reshape(t.data.shape)


def relative_error(analytic: np.ndarray, numeric: np.ndarray) -> float:
    scale = max(np.abs(numeric).max(), np.abs(analytic).max(), 1e-8)
    return float(np.abs(analytic - numeric).max() / scale)


def check_gradients(build, wrt: list[Tensor], h: float = 1e-5) -> float:
    """Max relative error across ``wrt`` tensors for the scalar ``build()``.

    ``build`` must construct the graph from scratch each call (graphs are
    single-use); the same Tensor objects in ``wrt`` must be reused by it.
    """
    worst = 0.0
    for t in wrt:
        t.grad = None
    out = build()
    out.backward()
    analytic = {id(t): t.grad.copy() for t in wrt}
    for t in wrt:
        num = numerical_gradient(build, t, h=h)
        worst = max(worst, relative_error(analytic[id(t)], num))
    return worst

"""Adam optimizer with bias correction."""

from __future__ import annotations

import numpy as np

from .tensor import NonFiniteError, Tensor


class AdamState:
    """First/second-moment buffers keyed by parameter name.

    The step counter increases by exactly one per :func:`adam_update` call;
    moment buffers always match their parameter's shape.
    """

    def __init__(self, params: dict[str, Tensor], learning_rate: float = 1e-3,
                 beta1: float = 0.9, beta2: float = 0.999, eps: float = 1e-8):
        self.learning_rate = float(learning_rate)
        self.beta1 = float(beta1)
        self.beta2 = float(beta2)
        self.eps = float(eps)
        self.step = 0
        self.m = {k: np.zeros_like(p.data) for k, p in params.items()}
        self.v = {k: np.zeros_like(p.data) for k, p in params.items()}


def adam_update(params: dict[str, Tensor], grads: dict[str, np.ndarray],
                state: AdamState) -> None:
    """Apply one bias-corrected Adam step in place.

    Raises :class:`NonFiniteError` (naming the offending parameter) if any
    gradient contains NaN/Inf, leaving parameters untouched.
    """
    for name, g in grads.items():
        if not np.all(np.isfinite(g)):
            bad = int(np.size(g) - np.isfinite(g).sum())
            raise NonFiniteError(
                f"non-finite gradient for {name!r} ({bad} of {np.size(g)} entries)"
            )
    state.step += 1
    b1, b2 = state.beta1, state.beta2
    mhat_scale = 1.0 / (1.0 - b1 ** state.step)
    vhat_scale = 1.0 / (1.0 - b2 ** state.step)
    for name, p in params.items():
        g = grads.get(name)
        if g is None:
            continue
        m = state.m[name]
        v = state.v[name]
        m *= b1
        m += (1.0 - b1) * g
        v *= b2
        v += (1.0 - b2) * (g * g)
        p.data -= state.learning_rate * (m * mhat_scale) / (
            np.sqrt(v * vhat_scale) + state.eps
        )

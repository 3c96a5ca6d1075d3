"""Classical upwind advection + two-step Adams-Bashforth, and its exact
reproduction by a constant-weight attention update.

With the upwind right-hand side ``F(u) = -(mu/dx) * (u - u_shift)`` (periodic
left neighbour), the AB2 update collapses to a fixed linear combination of
four past states:

    u^{n+2} = gamma1 * u^{n+1} + delta1 * u_shift^{n+1}
            + gamma2 * u^{n}   - delta2 * u_shift^{n}

    gamma1 = 1 - 3c/2,  delta1 = 3c/2,  gamma2 = c/2,  delta2 = c/2,
    c = mu*dt/dx.

Treating the four states as encoder states and (gamma1, delta1, gamma2,
-delta2) as data-independent attention weights with an identity value
projection reproduces the integrator to round-off, which is what
:func:`attention_emulates_ab2` verifies.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .autodiff import Tensor
from .models.evolver import attention_context


@dataclass
class Ab2Coefficients:
    gamma1: float
    delta1: float
    gamma2: float
    delta2: float

    @staticmethod
    def from_grid(mu: float, dt: float, dx: float) -> "Ab2Coefficients":
        if mu <= 0:
            raise ValueError("wave speed must be positive for the upwind stencil")
        c = mu * dt / dx
        return Ab2Coefficients(
            gamma1=1.0 - 1.5 * c, delta1=1.5 * c, gamma2=0.5 * c, delta2=0.5 * c
        )

    @property
    def consistency_sum(self) -> float:
        """gamma1 + delta1 + gamma2 - delta2; equals 1, preserving constants."""
        return self.gamma1 + self.delta1 + self.gamma2 - self.delta2

    def state_weights(self) -> np.ndarray:
        """Signed weights for the states [u^n+1, u_shift^n+1, u^n, u_shift^n]."""
        return np.array([self.gamma1, self.delta1, self.gamma2, -self.delta2])


def shift_right(u: np.ndarray) -> np.ndarray:
    """Left-neighbour field u_{i-1} with periodic wrap."""
    return np.roll(u, 1)


def upwind_rhs(u: np.ndarray, mu: float, dx: float) -> np.ndarray:
    u = np.asarray(u, dtype=np.float64)
    if u.shape[-1] < 2:
        raise ValueError("need at least two grid points")
    return -(mu / dx) * (u - shift_right(u))


def euler_step(u: np.ndarray, mu: float, dt: float, dx: float) -> np.ndarray:
    return u + dt * upwind_rhs(u, mu, dx)


def ab2_step(u_n: np.ndarray, u_nm1: np.ndarray, mu: float, dt: float, dx: float) -> np.ndarray:
    """Two-step Adams-Bashforth with the upwind right-hand side."""
    return u_n + 0.5 * dt * (3.0 * upwind_rhs(u_n, mu, dx) - upwind_rhs(u_nm1, mu, dx))


def ab2_expanded_step(u_n: np.ndarray, u_nm1: np.ndarray, coeffs: Ab2Coefficients) -> np.ndarray:
    """The same update written as the four-state linear combination."""
    return (
        coeffs.gamma1 * u_n
        + coeffs.delta1 * shift_right(u_n)
        + coeffs.gamma2 * u_nm1
        - coeffs.delta2 * shift_right(u_nm1)
    )


def integrate_ab2(u0: np.ndarray, mu: float, dt: float, dx: float, steps: int) -> np.ndarray:
    """AB2 trajectory (steps+1 rows incl. u0); bootstrapped with one Euler step."""
    traj = np.empty((steps + 1,) + np.shape(u0))
    traj[0] = u0
    if steps == 0:
        return traj
    traj[1] = euler_step(traj[0], mu, dt, dx)
    for n in range(1, steps):
        traj[n + 1] = ab2_step(traj[n], traj[n - 1], mu, dt, dx)
    return traj


def stacked_states(u_n: np.ndarray, u_nm1: np.ndarray) -> np.ndarray:
    """Encoder-state embedding: the (value, shifted-value) pair per past step."""
    return np.stack([u_n, shift_right(u_n), u_nm1, shift_right(u_nm1)])[None]


def attention_step(u_n: np.ndarray, u_nm1: np.ndarray, coeffs: Ab2Coefficients) -> np.ndarray:
    """One update through the models' fixed-weight attention context."""
    states = Tensor(stacked_states(u_n, u_nm1))  # (1, 4, N)
    ctx = attention_context(states, coeffs.state_weights())
    return ctx.data[0]


@dataclass
class EquivalenceReport:
    passed: bool
    max_deviation: float
    cfl: float
    steps: int
    tolerance: float
    deviations: np.ndarray  # per step

    def __str__(self):
        status = "PASS" if self.passed else "FAIL"
        return (
            f"{status}: AB2 vs fixed-attention over {self.steps} steps "
            f"(CFL={self.cfl:.3f}): max deviation {self.max_deviation:.3e} "
            f"(tolerance {self.tolerance:.0e})"
        )


def attention_emulates_ab2(u0: np.ndarray, mu: float, dt: float, dx: float,
                           steps: int = 50, tolerance: float = 1e-12) -> EquivalenceReport:
    """Run AB2 directly and through fixed-weight attention; compare pointwise."""
    coeffs = Ab2Coefficients.from_grid(mu, dt, dx)
    direct = integrate_ab2(u0, mu, dt, dx, steps)
    att_prev = np.asarray(u0, dtype=np.float64)
    att_cur = euler_step(att_prev, mu, dt, dx)
    deviations = np.empty(steps)
    deviations[0] = np.abs(att_cur - direct[1]).max()
    for n in range(1, steps):
        att_next = attention_step(att_cur, att_prev, coeffs)
        att_prev, att_cur = att_cur, att_next
        deviations[n] = np.abs(att_cur - direct[n + 1]).max()
    max_dev = float(deviations.max())
    return EquivalenceReport(
        passed=max_dev <= tolerance,
        max_deviation=max_dev,
        cfl=mu * dt / dx,
        steps=steps,
        tolerance=tolerance,
        deviations=deviations,
    )


def gaussian_advection_error(mu: float, dx: float, dt: float, steps: int,
                             sigma: float = 0.05) -> float:
    """Max-norm global error of AB2+upwind vs the exact periodic translate."""
    n = int(round(1.0 / dx))
    x = np.arange(n) * dx
    def exact(t):
        d = (x - 0.5 - mu * t) % 1.0
        d = np.where(d > 0.5, d - 1.0, d)
        return np.exp(-(d**2) / (2 * sigma**2))
    traj = integrate_ab2(exact(0.0), mu, dt, dx, steps)
    return float(np.abs(traj[-1] - exact(steps * dt)).max())

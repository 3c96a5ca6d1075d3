"""Reverse-mode autodiff on float64 numpy arrays.

A Tensor records the op that produced it as a backward closure plus the
parent tensors it was computed from. Calling ``backward()`` on a scalar
output walks the graph once in reverse topological order, accumulating
gradients by summation (shared subexpressions therefore receive the sum
of their downstream contributions).
"""

from __future__ import annotations

import numpy as np

_GRAD_ENABLED = True
_CHECK_FINITE = False


def grad_enabled() -> bool:
    return _GRAD_ENABLED


class no_grad:
    """Context manager disabling graph construction (inference mode)."""

    def __enter__(self):
        global _GRAD_ENABLED
        self._prev = _GRAD_ENABLED
        _GRAD_ENABLED = False
        return self

    def __exit__(self, *exc):
        global _GRAD_ENABLED
        _GRAD_ENABLED = self._prev
        return False


def set_check_finite(flag: bool) -> None:
    """When enabled, every op asserts its output is finite (debug aid)."""
    global _CHECK_FINITE
    _CHECK_FINITE = bool(flag)


class NonFiniteError(FloatingPointError):
    """Raised when a forward value or gradient contains NaN/Inf."""


class Tensor:
    __slots__ = ("data", "grad", "requires_grad", "name", "_parents", "_backward",
                 "_grad_refs")

    def __init__(self, data, requires_grad: bool = False, name: str | None = None):
        self.data = np.asarray(data, dtype=np.float64)
        self.grad: np.ndarray | None = None
        self.requires_grad = bool(requires_grad)
        self.name = name
        self._parents: tuple[Tensor, ...] = ()
        self._backward = None
        self._grad_refs = 2  # pessimistic default: copy on first accumulation

    # -- construction helpers -------------------------------------------------

    @staticmethod
    def result(data: np.ndarray, parents: tuple["Tensor", ...], backward) -> "Tensor":
        """Create an op output, wiring up the graph only when grads are on."""
        if _CHECK_FINITE and not np.all(np.isfinite(data)):
            raise NonFiniteError("non-finite values in forward pass")
        out = Tensor(data)
        if _GRAD_ENABLED and any(p.requires_grad for p in parents):
            out.requires_grad = True
            out._parents = parents
            out._backward = backward
        return out

    def accumulate(self, g: np.ndarray) -> None:
        if self.grad is None:
            if self._grad_refs > 1:
                # copy: a second contribution will += in place, and g may be
                # shared with (or be a view into) another tensor's gradient
                self.grad = np.array(g, dtype=np.float64, copy=True)
            else:
                self.grad = g if isinstance(g, np.ndarray) else np.asarray(g, dtype=np.float64)
        else:
            # refs > 1 guaranteed the first contribution was copied, so this
            # buffer is private and writeable
            self.grad += g

    # -- basic properties -----------------------------------------------------

    @property
    def shape(self):
        return self.data.shape

    @property
    def ndim(self):
        return self.data.ndim

    @property
    def size(self):
        return self.data.size

    def item(self) -> float:
        return float(self.data)

    def __repr__(self):
        tag = f" name={self.name!r}" if self.name else ""
        return f"Tensor(shape={self.data.shape}{tag}, requires_grad={self.requires_grad})"

    # -- autodiff -------------------------------------------------------------

    def backward(self, seed: np.ndarray | None = None) -> None:
        """Backpropagate from this tensor; scalar outputs need no seed."""
        if seed is None:
            if self.data.size != 1:
                raise ValueError("backward() without seed requires a scalar output")
            seed = np.ones_like(self.data)
        self.grad = np.asarray(seed, dtype=np.float64).reshape(self.data.shape).copy()

        order = self._topological_order()
        # exact consumer counts let accumulate() skip defensive copies for
        # tensors that receive a single gradient contribution
        counts: dict[int, int] = {}
        for node in order:
            for p in node._parents:
                counts[id(p)] = counts.get(id(p), 0) + 1
        for node in order:
            node._grad_refs = counts.get(id(node), 2)
            for p in node._parents:
                if p._backward is None:  # leaves get counts too
                    p._grad_refs = counts[id(p)]
        for node in reversed(order):
            if node._backward is None or node.grad is None:
                continue
            node._backward(node.grad)
            # free intermediate grads/graph so big activations can be collected
            if node is not self:
                node.grad = None
            node._backward = None
            node._parents = ()

    def _topological_order(self) -> list["Tensor"]:
        order: list[Tensor] = []
        visited: set[int] = set()
        stack: list[tuple[Tensor, bool]] = [(self, False)]
        while stack:
            node, expanded = stack.pop()
            if expanded:
                order.append(node)
                continue
            if id(node) in visited:
                continue
            visited.add(id(node))
            stack.append((node, True))
            for p in node._parents:
                if id(p) not in visited and p._backward is not None:
                    stack.append((p, False))
                elif id(p) not in visited and p.requires_grad:
                    visited.add(id(p))  # leaf: grads accumulate, nothing to expand
        return order

    # -- operator sugar (thin wrappers; heavy ops live in ops.py) -------------

    def __add__(self, other):
        from . import ops

        return ops.add(self, _wrap(other))

    __radd__ = __add__

    def __mul__(self, other):
        from . import ops

        return ops.mul(self, _wrap(other))

    __rmul__ = __mul__

    def __sub__(self, other):
        from . import ops

        return ops.sub(self, _wrap(other))

    def __rsub__(self, other):
        from . import ops

        return ops.sub(_wrap(other), self)

    def __neg__(self):
        from . import ops

        return ops.scale(self, -1.0)

    def __matmul__(self, other):
        from . import ops

        return ops.matmul(self, _wrap(other))

    def __getitem__(self, key):
        from . import ops

        return ops.index(self, key)


def _wrap(x) -> Tensor:
    return x if isinstance(x, Tensor) else Tensor(np.asarray(x, dtype=np.float64))


def parameter(data, name: str) -> Tensor:
    """A trainable leaf tensor."""
    t = Tensor(np.array(data, dtype=np.float64), requires_grad=True, name=name)
    return t

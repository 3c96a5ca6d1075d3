from . import ops
from .gradcheck import check_gradients, numerical_gradient, relative_error
from .init import SeedTree, glorot_uniform
from .optim import AdamState, adam_update
from .tensor import NonFiniteError, Tensor, no_grad, parameter, set_check_finite

__all__ = [
    "AdamState",
    "NonFiniteError",
    "SeedTree",
    "Tensor",
    "adam_update",
    "check_gradients",
    "glorot_uniform",
    "no_grad",
    "numerical_gradient",
    "ops",
    "parameter",
    "relative_error",
    "set_check_finite",
]

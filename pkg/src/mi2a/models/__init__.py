from .config import (
    EVOLVERS,
    ModelConfig,
    group_totals,
    parameter_counts,
    total_parameters,
)
from .evolver import attention_context, evolve
from .network import Mi2aModel, fixed_attention_override

__all__ = [
    "EVOLVERS",
    "Mi2aModel",
    "ModelConfig",
    "attention_context",
    "evolve",
    "fixed_attention_override",
    "group_totals",
    "parameter_counts",
    "total_parameters",
]

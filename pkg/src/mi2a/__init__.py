"""Reduced-order wave forecasting: convolutional autoencoder + attention
evolver with a dispersion/dissipation-decomposed training loss."""

from . import autodiff, datasets, evaluation, losses, models, multistep, training
from .estimator import WaveForecaster
from .evaluation import MetricSeries, RolloutResult, comparison_table, metrics, rollout
from .models import Mi2aModel, ModelConfig, fixed_attention_override, total_parameters
from .training import Checkpoint, RunConfig, TrainResult, train

__version__ = "0.1.0"

__all__ = [
    "Checkpoint",
    "MetricSeries",
    "Mi2aModel",
    "ModelConfig",
    "RolloutResult",
    "RunConfig",
    "TrainResult",
    "WaveForecaster",
    "autodiff",
    "comparison_table",
    "datasets",
    "evaluation",
    "fixed_attention_override",
    "losses",
    "metrics",
    "models",
    "multistep",
    "rollout",
    "total_parameters",
    "train",
]

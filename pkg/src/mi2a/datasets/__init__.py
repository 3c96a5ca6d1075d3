from .burgers import TEST_REYNOLDS, burgers_solution, gen_burgers, training_reynolds
from .convection import (
    gaussian_profile,
    gen_linear_convection,
    test_speeds,
    training_speeds,
)
from .io import (
    FormatError,
    SnapshotDataset,
    load_dataset,
    read_tensor,
    save_dataset,
    write_tensor,
)
from .shallow_water import (
    SolverInstabilityError,
    gen_shallow_water,
    plane_wave,
    simulate,
    test_positions,
    training_positions,
)
from .windows import TrainingPairs, build_pairs, denormalize, normalize, window_count

__all__ = [
    "FormatError",
    "SnapshotDataset",
    "SolverInstabilityError",
    "TEST_REYNOLDS",
    "TrainingPairs",
    "build_pairs",
    "burgers_solution",
    "denormalize",
    "gaussian_profile",
    "gen_burgers",
    "gen_linear_convection",
    "gen_shallow_water",
    "load_dataset",
    "normalize",
    "plane_wave",
    "read_tensor",
    "save_dataset",
    "simulate",
    "test_positions",
    "test_speeds",
    "training_positions",
    "training_reynolds",
    "window_count",
]

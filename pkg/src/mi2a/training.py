"""Joint training of encoder, evolver and decoder.

One step: encode the noisy inputs, decode the latents for the denoising
reconstruction loss, evolve the same latents, decode the evolved latents and
score them against the target windows, combine both losses, backpropagate,
Adam-update. Epochs are full shuffled passes over the sample set.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .autodiff import AdamState, NonFiniteError, Tensor, adam_update
from .autodiff.ops import add as ops_add
from .datasets.io import read_tensor, write_tensor
from .datasets.windows import TrainingPairs
from .losses import ae_loss, decompose_mse, evolver_loss, plain_mse_evolver_loss, total_loss
from .models import Mi2aModel, ModelConfig

LOSS_MODES = ("decomposed", "plain")


class TrainingDivergedError(RuntimeError):
    """Loss became non-finite; carries the last-good checkpoint."""

    def __init__(self, message: str, checkpoint: "Checkpoint | None" = None):
        super().__init__(message)
        self.checkpoint = checkpoint


@dataclass
class RunConfig:
    benchmark: str = "convection"
    model: ModelConfig = field(default_factory=ModelConfig)
    evolver_weight: float = 0.5
    dispersion_weight: float = 0.7
    loss_mode: str = "decomposed"
    epochs: int = 100
    batch_size: int = 16
    learning_rate: float = 1e-3
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    seed: int = 0
    noise_mean: float = 0.0
    noise_sd: float = 0.01
    window: int = 10

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        problems = []
        if self.epochs < 1:
            problems.append(f"epochs must be >= 1, got {self.epochs}")
        if self.batch_size < 1:
            problems.append(f"batch_size must be >= 1, got {self.batch_size}")
        if self.loss_mode not in LOSS_MODES:
            problems.append(f"loss_mode must be one of {LOSS_MODES}, got {self.loss_mode!r}")
        if not 0.0 <= self.evolver_weight <= 1.0:
            problems.append(f"evolver_weight must lie in [0,1], got {self.evolver_weight}")
        if not 0.0 <= self.dispersion_weight <= 1.0:
            problems.append(
                f"dispersion_weight must lie in [0,1], got {self.dispersion_weight}"
            )
        if self.window < 1:
            problems.append(f"window must be >= 1, got {self.window}")
        if problems:
            raise ValueError("; ".join(problems))

    def to_dict(self) -> dict:
        d = {
            "benchmark": self.benchmark,
            "model": self.model.to_dict(),
            "evolver_weight": self.evolver_weight,
            "dispersion_weight": self.dispersion_weight,
            "loss_mode": self.loss_mode,
            "epochs": self.epochs,
            "batch_size": self.batch_size,
            "learning_rate": self.learning_rate,
            "beta1": self.beta1,
            "beta2": self.beta2,
            "eps": self.eps,
            "seed": self.seed,
            "noise_mean": self.noise_mean,
            "noise_sd": self.noise_sd,
            "window": self.window,
        }
        return d

    @staticmethod
    def from_dict(d: dict) -> "RunConfig":
        d = dict(d)
        model = d.pop("model", {})
        cfg = RunConfig(model=ModelConfig.from_dict(model) if model else ModelConfig(), **d)
        return cfg

    def config_hash(self) -> str:
        blob = json.dumps(self.to_dict(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]


@dataclass
class EpochStats:
    epoch: int
    total: float
    ae: float
    dissipation: float
    dispersion: float


def write_history_csv(history: list[EpochStats], path) -> None:
    lines = ["epoch,loss_total,loss_ae,loss_dissipation,loss_dispersion"]
    for row in history:
        lines.append(
            f"{row.epoch},{row.total!r},{row.ae!r},{row.dissipation!r},{row.dispersion!r}"
        )
    Path(path).write_text("\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# batching
# ---------------------------------------------------------------------------

def iter_epoch(pairs: TrainingPairs, batch_size: int, rng: np.random.Generator):
    """Shuffled partition of one epoch: every sample appears exactly once."""
    perm = rng.permutation(pairs.n_samples)
    for start in range(0, pairs.n_samples, batch_size):
        idx = perm[start : start + batch_size]
        yield pairs.x_noisy[idx], pairs.x_clean[idx], pairs.y[idx]


def sample_batch(pairs: TrainingPairs, batch_size: int, rng: np.random.Generator):
    """One uniform batch without replacement, index-aligned across tensors."""
    if batch_size > pairs.n_samples:
        raise ValueError(f"batch_size {batch_size} exceeds {pairs.n_samples} samples")
    idx = rng.choice(pairs.n_samples, size=batch_size, replace=False)
    return pairs.x_noisy[idx], pairs.x_clean[idx], pairs.y[idx]


# ---------------------------------------------------------------------------
# checkpointing
# ---------------------------------------------------------------------------

@dataclass
class Checkpoint:
    model: Mi2aModel
    adam: AdamState
    epoch: int
    rng_state: dict
    run_config: RunConfig
    global_min: float
    global_max: float

    def save(self, directory) -> None:
        directory = Path(directory)
        (directory / "params").mkdir(parents=True, exist_ok=True)
        (directory / "adam").mkdir(parents=True, exist_ok=True)
        self.model.save_params(directory / "params")
        for name, p in self.model.params.items():
            write_tensor(directory / "adam" / f"{name}.m.mi2a", self.adam.m[name])
            write_tensor(directory / "adam" / f"{name}.v.mi2a", self.adam.v[name])
        manifest = {
            "epoch": self.epoch,
            "adam_step": self.adam.step,
            "rng_state": self.rng_state,
            "run_config": self.run_config.to_dict(),
            "config_hash": self.run_config.config_hash(),
            "global_min": self.global_min,
            "global_max": self.global_max,
            "layers": {k: list(p.data.shape) for k, p in self.model.params.items()},
        }
        (directory / "manifest.json").write_text(json.dumps(manifest, indent=2))

    @staticmethod
    def load(directory) -> "Checkpoint":
        directory = Path(directory)
        manifest = json.loads((directory / "manifest.json").read_text())
        cfg = RunConfig.from_dict(manifest["run_config"])
        model = Mi2aModel.load_params(directory / "params")
        adam = AdamState(model.params, cfg.learning_rate, cfg.beta1, cfg.beta2, cfg.eps)
        adam.step = manifest["adam_step"]
        for name in model.params:
            adam.m[name] = read_tensor(directory / "adam" / f"{name}.m.mi2a")
            adam.v[name] = read_tensor(directory / "adam" / f"{name}.v.mi2a")
        return Checkpoint(
            model=model,
            adam=adam,
            epoch=manifest["epoch"],
            rng_state=manifest["rng_state"],
            run_config=cfg,
            global_min=manifest["global_min"],
            global_max=manifest["global_max"],
        )


# ---------------------------------------------------------------------------
# the loop
# ---------------------------------------------------------------------------

def training_step_loss(model: Mi2aModel, xb_noisy, xb_clean, yb, cfg: RunConfig):
    """Build the joint loss graph for one batch; returns (loss, parts).

    In decomposed mode the weighted dispersion/dissipation term is added on
    top of the plain MSE evolver objective. Keeping the MSE anchor matters:
    on its own, the weighted split (dispersion weight > 0.5) makes amplitude
    collapse a self-reinforcing optimum whenever the phase is not yet
    learned, because shrinking the predicted variance is cheaper than
    placing the wave imperfectly.
    """
    z = model.encode(xb_noisy)
    x_hat = model.decode(z)
    z_next, _ = model.evolve(z)
    x_next = model.decode(z_next)
    ae = ae_loss(x_hat, xb_clean)
    ev = plain_mse_evolver_loss(x_next, yb)
    if cfg.loss_mode == "decomposed":
        ev = ops_add(ev, evolver_loss(x_next, yb, cfg.dispersion_weight))
    loss = total_loss(ae, ev, cfg.evolver_weight)
    flat = x_next.data.reshape(x_next.data.shape[0], x_next.data.shape[1], -1)
    split = decompose_mse(yb.reshape(flat.shape), flat)
    parts = {
        "ae": float(ae.data),
        "evolver": float(ev.data),
        "dissipation": split.dissipation,
        "dispersion": split.dispersion,
    }
    return loss, parts


def gradient_group_norms(model: Mi2aModel, xb_noisy, xb_clean, yb, cfg: RunConfig):
    """L2 gradient norm per parameter group for one batch (audit helper)."""
    model.zero_grads()
    loss, _ = training_step_loss(model, xb_noisy, xb_clean, yb, cfg)
    loss.backward()
    norms = {"encoder": 0.0, "decoder": 0.0, "evolver": 0.0}
    for name, p in model.params.items():
        if p.grad is None:
            continue
        key = {"enc": "encoder", "dec": "decoder", "evo": "evolver"}[name.split(".")[0]]
        norms[key] += float((p.grad**2).sum())
    return {k: float(np.sqrt(v)) for k, v in norms.items()}


@dataclass
class TrainResult:
    checkpoint: Checkpoint
    history: list[EpochStats]


def train(cfg: RunConfig, pairs: TrainingPairs,
          resume_from: Checkpoint | None = None,
          progress=None) -> TrainResult:
    """Run (or resume) the optimization loop defined by ``cfg``.

    Raises :class:`TrainingDivergedError` with the last epoch's checkpoint
    attached if the loss leaves the finite range.
    """
    if pairs.window != cfg.window:
        raise ValueError(f"pairs built with window {pairs.window}, config wants {cfg.window}")
    if tuple(pairs.spatial_shape) != cfg.model.spatial:
        raise ValueError(
            f"pairs have spatial shape {pairs.spatial_shape}, config wants {cfg.model.spatial}"
        )

    if resume_from is not None:
        model = resume_from.model
        adam = resume_from.adam
        shuffle_rng = np.random.default_rng()
        shuffle_rng.bit_generator.state = resume_from.rng_state
        start_epoch = resume_from.epoch
        history: list[EpochStats] = []
    else:
        model = Mi2aModel(cfg.model, seed=cfg.seed)
        adam = AdamState(model.params, cfg.learning_rate, cfg.beta1, cfg.beta2, cfg.eps)
        shuffle_rng = np.random.default_rng(np.random.SeedSequence([cfg.seed, 0x5A]))
        start_epoch = 0
        history = []

    def snapshot(epoch: int) -> Checkpoint:
        snap_model = Mi2aModel(cfg.model, seed=cfg.seed)
        snap_model.load_state_arrays(model.state_arrays())
        snap_adam = AdamState(snap_model.params, cfg.learning_rate, cfg.beta1, cfg.beta2, cfg.eps)
        snap_adam.step = adam.step
        snap_adam.m = {k: v.copy() for k, v in adam.m.items()}
        snap_adam.v = {k: v.copy() for k, v in adam.v.items()}
        return Checkpoint(
            model=snap_model, adam=snap_adam, epoch=epoch,
            rng_state=shuffle_rng.bit_generator.state,
            run_config=cfg, global_min=pairs.global_min, global_max=pairs.global_max,
        )

    last_good = snapshot(start_epoch)
    for epoch in range(start_epoch, cfg.epochs):
        sums = {"total": 0.0, "ae": 0.0, "dissipation": 0.0, "dispersion": 0.0}
        seen = 0
        for xb_noisy, xb_clean, yb in iter_epoch(pairs, cfg.batch_size, shuffle_rng):
            model.zero_grads()
            loss, parts = training_step_loss(model, xb_noisy, xb_clean, yb, cfg)
            value = float(loss.data)
            if not np.isfinite(value):
                raise TrainingDivergedError(
                    f"non-finite loss at epoch {epoch + 1}; rolled back to epoch "
                    f"{last_good.epoch}", checkpoint=last_good,
                )
            loss.backward()
            try:
                adam_update(model.params, model.grads(), adam)
            except NonFiniteError as exc:
                raise TrainingDivergedError(
                    f"{exc} at epoch {epoch + 1}; rolled back to epoch {last_good.epoch}",
                    checkpoint=last_good,
                ) from exc
            n = xb_clean.shape[0]
            seen += n
            sums["total"] += value * n
            sums["ae"] += parts["ae"] * n
            sums["dissipation"] += parts["dissipation"] * n
            sums["dispersion"] += parts["dispersion"] * n
        stats = EpochStats(
            epoch=epoch + 1,
            total=sums["total"] / seen,
            ae=sums["ae"] / seen,
            dissipation=sums["dissipation"] / seen,
            dispersion=sums["dispersion"] / seen,
        )
        history.append(stats)
        last_good = snapshot(epoch + 1)
        if progress is not None:
            progress(stats)

    return TrainResult(checkpoint=last_good, history=history)

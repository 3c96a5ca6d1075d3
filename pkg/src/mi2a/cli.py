"""Command-line entry point.

Subcommands: gen-data, train, evaluate, table, lmm-verify, gradcheck.
Every run writes a manifest (effective config, config hash, seed, package
versions) beside its outputs. Exit codes: 0 success, 2 configuration error,
3 numeric failure; failures emit one JSON object on stderr.

The MI2A_THREADS environment variable caps BLAS threads and must be applied
before numpy loads, hence the lazy imports throughout.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3


def _apply_thread_cap() -> None:
    cap = os.environ.get("MI2A_THREADS")
    if cap:
        for var in ("OPENBLAS_NUM_THREADS", "OMP_NUM_THREADS", "MKL_NUM_THREADS"):
            os.environ.setdefault(var, cap)


def _parse_override(text: str) -> tuple[str, object]:
    if "=" not in text:
        raise ValueError(f"override {text!r} is not of the form key=value")
    key, raw = text.split("=", 1)
    try:
        value = json.loads(raw)
    except json.JSONDecodeError:
        value = raw
    return key, value


def _apply_overrides(config: dict, overrides: list[str]) -> dict:
    problems = []
    for item in overrides:
        try:
            key, value = _parse_override(item)
        except ValueError as exc:
            problems.append(str(exc))
            continue
        node = config
        parts = key.split(".")
        for part in parts[:-1]:
            node = node.setdefault(part, {})
            if not isinstance(node, dict):
                problems.append(f"override {key!r} traverses non-object {part!r}")
                break
        else:
            node[parts[-1]] = value
    if problems:
        raise ValueError("; ".join(problems))
    return config


def _load_config(path: str | None, defaults: dict, overrides: list[str]) -> dict:
    config = json.loads(json.dumps(defaults))  # deep copy
    if path:
        loaded = json.loads(Path(path).read_text())
        unknown = [k for k in loaded if k not in defaults]
        if unknown:
            raise ValueError(
                "unknown config keys: " + ", ".join(sorted(unknown))
            )
        config.update(loaded)
    return _apply_overrides(config, overrides)


def _write_manifest(out_dir: Path, command: str, config: dict, seed, outputs: list[str]) -> None:
    import hashlib

    import numpy

    from . import __version__

    blob = json.dumps(config, sort_keys=True).encode()
    manifest = {
        "command": command,
        "config": config,
        "config_hash": hashlib.sha256(blob).hexdigest()[:16],
        "seed": seed,
        "versions": {"mi2a": __version__, "numpy": numpy.__version__},
        "outputs": outputs,
    }
    (out_dir / "manifest.json").write_text(json.dumps(manifest, indent=2))


DATA_DEFAULTS: dict[str, dict] = {
    "convection": {
        "params": None, "split": "train", "n_train": 20,
        "n_points": 256, "n_steps": 200, "t_max": 1.0, "variance": 1e-4,
    },
    "burgers": {
        "params": None, "split": "train", "n_train": 7,
        "n_points": 256, "n_steps": 200, "t_max": 2.0,
    },
    "shallow-water": {
        "params": None, "split": "train", "n_train": 20, "n_test": 5,
        "nx": 64, "ny": 64, "n_steps": 100, "t_max": 1.0,
        "gravity": 1.0, "depth": 1.0, "viscosity": 1e-3,
        "amplitude": 0.1, "width": 0.08, "cfl_safety": 0.35,
    },
}

TRAIN_DEFAULTS = {
    "benchmark": "convection",
    "model": {
        "spatial": [256], "latent_dim": 2, "hidden_units": 32,
        "derivative_kernel": 3, "evolver": "mi2a",
        "conv_filters": [64, 32], "conv_kernel": 5, "conv_stride": 2,
        "pool": 2, "dense_units": [128, 64],
    },
    "evolver_weight": 0.5, "dispersion_weight": 0.7, "loss_mode": "decomposed",
    "epochs": 100, "batch_size": 16, "learning_rate": 1e-3,
    "beta1": 0.9, "beta2": 0.999, "eps": 1e-8,
    "seed": 0, "noise_mean": 0.0, "noise_sd": 0.01, "window": 10,
}

VARIANT_LABELS = {
    ("mi2a", "decomposed"): "MI2A_LossDecomp",
    ("mi2a", "plain"): "MI2A",
    ("luong", "plain"): "Luong",
    ("luong", "decomposed"): "Luong_LossDecomp",
    ("cran", "plain"): "CRAN",
    ("cran", "decomposed"): "CRAN_LossDecomp",
}


def _gen_data(args) -> int:
    import numpy as np

    from .datasets import (
        burgers, convection, save_dataset, shallow_water,
    )

    config = _load_config(args.config, DATA_DEFAULTS[args.benchmark], args.set or [])
    if args.seed is not None:
        config["seed"] = args.seed
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    if args.benchmark == "convection":
        if config["params"] is not None:
            params = np.asarray(config["params"], dtype=float)
        elif config["split"] == "test":
            params = convection.test_speeds(convection.training_speeds(config["n_train"]))
        else:
            params = convection.training_speeds(config["n_train"])
        ds = convection.gen_linear_convection(
            params, n_points=config["n_points"], n_steps=config["n_steps"],
            t_max=config["t_max"], variance=config["variance"],
        )
    elif args.benchmark == "burgers":
        if config["params"] is not None:
            params = np.asarray(config["params"], dtype=float)
        elif config["split"] == "test":
            params = np.asarray(burgers.TEST_REYNOLDS)
        else:
            params = burgers.training_reynolds(config["n_train"])
        ds = burgers.gen_burgers(
            params, n_points=config["n_points"], n_steps=config["n_steps"],
            t_max=config["t_max"],
        )
    else:
        train_pos = shallow_water.training_positions(config["n_train"])
        if config["params"] is not None:
            params = np.asarray(config["params"], dtype=float)
        elif config["split"] == "test":
            params = shallow_water.test_positions(train_pos, config["n_test"])
        else:
            params = train_pos
        ds = shallow_water.gen_shallow_water(
            params, nx=config["nx"], ny=config["ny"], n_steps=config["n_steps"],
            t_max=config["t_max"], gravity=config["gravity"], depth=config["depth"],
            viscosity=config["viscosity"], amplitude=config["amplitude"],
            width=config["width"], safety=config["cfl_safety"],
        )

    name = f"{args.benchmark}-{config['split']}.mi2a"
    save_dataset(ds, out / name)
    _write_manifest(out, "gen-data", config, args.seed,
                    [name, name.replace(".mi2a", ".json")])
    print(f"wrote {out / name}  shape={ds.snapshots.shape}")
    return EXIT_OK


def _train(args) -> int:
    from .datasets import build_pairs, load_dataset
    from .training import Checkpoint, RunConfig, train, write_history_csv

    config = _load_config(args.config, TRAIN_DEFAULTS, args.set or [])
    if args.seed is not None:
        config["seed"] = args.seed
    cfg = RunConfig.from_dict(config)
    ds = load_dataset(args.data)
    pairs = build_pairs(ds, cfg.window, cfg.noise_mean, cfg.noise_sd, seed=cfg.seed)

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    resume = Checkpoint.load(args.resume) if args.resume else None

    def progress(stats):
        if args.verbose and (stats.epoch % max(1, cfg.epochs // 20) == 0 or stats.epoch == 1):
            print(f"epoch {stats.epoch}/{cfg.epochs}  loss={stats.total:.6g}", flush=True)

    result = train(cfg, pairs, resume_from=resume, progress=progress)
    result.checkpoint.save(out / "checkpoint")
    write_history_csv(result.history, out / "history.csv")
    _write_manifest(out, "train", cfg.to_dict(), cfg.seed, ["checkpoint", "history.csv"])
    print(f"trained {cfg.model.evolver}/{cfg.loss_mode} for {cfg.epochs} epochs; "
          f"final loss {result.history[-1].total:.6g}")
    return EXIT_OK


def _evaluate(args) -> int:
    from .datasets import load_dataset, normalize, write_tensor
    from .evaluation import evaluate_checkpoint, rollout, write_metrics_csv
    from .training import Checkpoint

    ckpt = Checkpoint.load(args.checkpoint)
    ds = load_dataset(args.data)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    results = evaluate_checkpoint(ckpt, ds, n_horizons=args.n_horizons,
                                  physical_units=args.physical)
    outputs = []
    summary = ["param,avg_mse,avg_mae,avg_linf"]
    window = ckpt.run_config.window
    for param, series in results.items():
        tag = f"param_{param:g}"
        write_metrics_csv(series, out / f"{tag}.csv")
        outputs.append(f"{tag}.csv")
        summary.append(f"{param!r},{series.avg_mse!r},{series.avg_mae!r},{series.avg_linf!r}")
    for param, traj in zip(ds.params, ds.snapshots):
        scaled = normalize(traj, ckpt.global_min, ckpt.global_max)
        res = rollout(ckpt.model, scaled[:window], args.n_horizons or
                      (ds.n_steps - window) // window)
        steps = res.trajectory.shape[0]
        err = res.trajectory - scaled[window : window + steps]
        write_tensor(out / f"param_{param:g}.error.mi2a", err)
        outputs.append(f"param_{param:g}.error.mi2a")
    (out / "summary.csv").write_text("\n".join(summary) + "\n")
    outputs.append("summary.csv")
    _write_manifest(out, "evaluate", {"checkpoint": str(args.checkpoint),
                                      "data": str(args.data),
                                      "n_horizons": args.n_horizons,
                                      "physical": args.physical},
                    None, outputs)
    print((out / "summary.csv").read_text().strip())
    return EXIT_OK


def _table(args) -> int:
    from .datasets import load_dataset
    from .evaluation import comparison_table, write_table_csv
    from .training import Checkpoint

    ds = load_dataset(args.data)
    checkpoints = {}
    for run_dir in args.runs:
        run = Path(run_dir)
        ckpt_dir = run / "checkpoint"
        if not ckpt_dir.exists():
            raise FileNotFoundError(f"no checkpoint under {run}")
        ckpt = Checkpoint.load(ckpt_dir)
        label = VARIANT_LABELS.get(
            (ckpt.run_config.model.evolver, ckpt.run_config.loss_mode), run.name
        )
        checkpoints[label] = ckpt
    metric_names = tuple(args.metrics.split(","))
    rows = comparison_table(checkpoints, ds, metric_names=metric_names,
                            n_horizons=args.n_horizons, physical_units=args.physical)
    write_table_csv(rows, args.out)
    print(Path(args.out).read_text().strip())
    return EXIT_OK


def _lmm_verify(args) -> int:
    import numpy as np

    from .multistep import Ab2Coefficients, attention_emulates_ab2

    n = args.points
    x = np.arange(n) * args.dx
    u0 = np.exp(-((x - x[n // 4]) ** 2) / (2 * (8 * args.dx) ** 2))
    report = attention_emulates_ab2(u0, mu=args.mu, dt=args.dt, dx=args.dx,
                                    steps=args.steps)
    coeffs = Ab2Coefficients.from_grid(args.mu, args.dt, args.dx)
    print(report)
    print(f"coefficients: gamma1={coeffs.gamma1:.6g} delta1={coeffs.delta1:.6g} "
          f"gamma2={coeffs.gamma2:.6g} delta2={coeffs.delta2:.6g} "
          f"consistency sum={coeffs.consistency_sum:.6g}")
    if args.out:
        lines = ["step,max_deviation"]
        lines += [f"{i + 1},{float(d)!r}" for i, d in enumerate(report.deviations)]
        Path(args.out).write_text("\n".join(lines) + "\n")
    if not report.passed:
        raise FloatingPointError(
            f"equivalence failed: max deviation {report.max_deviation:g}"
        )
    return EXIT_OK


def _gradcheck(args) -> int:
    from .diagnostics import gradcheck_battery

    results = gradcheck_battery()
    if args.module != "all":
        results = [(n, e) for n, e in results if n.startswith(args.module)]
        if not results:
            raise ValueError(f"no gradcheck targets match {args.module!r}")
    width = max(len(n) for n, _ in results)
    worst = 0.0
    for name, err in results:
        print(f"{name:<{width}}  {err:.3e}")
        worst = max(worst, err)
    print(f"{'worst':<{width}}  {worst:.3e}")
    if worst > 1e-4:
        raise FloatingPointError(f"gradient check failed: worst relative error {worst:g}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mi2a",
        description="Reduced-order wave forecasting pipeline",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-data", help="generate benchmark snapshot datasets")
    p.add_argument("--benchmark", required=True, choices=list(DATA_DEFAULTS))
    p.add_argument("--config", help="JSON config file")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--set", action="append", metavar="KEY=VALUE",
                   help="config override (repeatable)")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=_gen_data)

    p = sub.add_parser("train", help="train a model on a generated dataset")
    p.add_argument("--config", help="JSON run config")
    p.add_argument("--data", required=True, help="dataset .mi2a file")
    p.add_argument("--out", required=True)
    p.add_argument("--set", action="append", metavar="KEY=VALUE")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--resume", help="checkpoint directory to resume from")
    p.add_argument("--verbose", action="store_true")
    p.set_defaults(func=_train)

    p = sub.add_parser("evaluate", help="roll out a checkpoint against a dataset")
    p.add_argument("--checkpoint", required=True)
    p.add_argument("--data", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--n-horizons", type=int, default=None)
    p.add_argument("--physical", action="store_true",
                   help="score in denormalized physical units")
    p.set_defaults(func=_evaluate)

    p = sub.add_parser("table", help="comparison table across trained variants")
    p.add_argument("--runs", nargs="+", required=True, help="training output dirs")
    p.add_argument("--data", required=True, help="test dataset .mi2a file")
    p.add_argument("--out", required=True, help="output CSV path")
    p.add_argument("--metrics", default="mse,linf")
    p.add_argument("--n-horizons", type=int, default=None)
    p.add_argument("--physical", action="store_true")
    p.set_defaults(func=_table)

    p = sub.add_parser("lmm-verify",
                       help="verify the fixed-attention multistep equivalence")
    p.add_argument("--mu", type=float, required=True)
    p.add_argument("--dt", type=float, required=True)
    p.add_argument("--dx", type=float, required=True)
    p.add_argument("--steps", type=int, default=50)
    p.add_argument("--points", type=int, default=128)
    p.add_argument("--out", help="per-step deviation CSV")
    p.set_defaults(func=_lmm_verify)

    p = sub.add_parser("gradcheck", help="finite-difference gradient audit")
    p.add_argument("--module", default="all",
                   help="all, or a name prefix such as conv1d")
    p.set_defaults(func=_gradcheck)

    return parser


def main(argv: list[str] | None = None) -> int:
    _apply_thread_cap()
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, KeyError, FileNotFoundError, json.JSONDecodeError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}),
              file=sys.stderr)
        return EXIT_CONFIG
    except (FloatingPointError, ArithmeticError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}),
              file=sys.stderr)
        return EXIT_NUMERIC
    except RuntimeError as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}),
              file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())

"""Binary tensor container and dataset (de)serialization.

File layout (little endian): magic ``MI2A``, version u32, rank u32, then
``rank`` u64 extents, then the float64 payload in row-major order. Datasets
pair one tensor file with a ``.json`` sidecar carrying parameters, grid
metadata and the global normalization bounds.
"""

from __future__ import annotations

import json
import struct
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

MAGIC = b"MI2A"
VERSION = 1


class FormatError(ValueError):
    """Malformed tensor file (bad magic/version, truncated, size mismatch)."""


@dataclass
class SnapshotDataset:
    """Solution snapshots for one benchmark over a list of parameter values."""

    params: list[float]
    snapshots: np.ndarray  # (n_params, n_steps, *spatial)
    grid: dict = field(default_factory=dict)
    global_min: float = 0.0
    global_max: float = 1.0
    benchmark: str = ""

    def __post_init__(self):
        self.snapshots = np.asarray(self.snapshots, dtype=np.float64)
        if len(self.params) != self.snapshots.shape[0]:
            raise ValueError(
                f"{len(self.params)} params vs {self.snapshots.shape[0]} trajectories"
            )
        if not self.global_max > self.global_min:
            raise ValueError("degenerate field: global_max must exceed global_min")

    @property
    def n_params(self) -> int:
        return self.snapshots.shape[0]

    @property
    def n_steps(self) -> int:
        return self.snapshots.shape[1]

    @property
    def spatial_shape(self) -> tuple[int, ...]:
        return self.snapshots.shape[2:]

    @staticmethod
    def from_snapshots(params, snapshots, grid=None, benchmark="") -> "SnapshotDataset":
        snapshots = np.asarray(snapshots, dtype=np.float64)
        return SnapshotDataset(
            params=list(map(float, params)),
            snapshots=snapshots,
            grid=dict(grid or {}),
            global_min=float(snapshots.min()),
            global_max=float(snapshots.max()),
            benchmark=benchmark,
        )


def write_tensor(path, array: np.ndarray) -> None:
    array = np.ascontiguousarray(array, dtype=np.float64)
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<II", VERSION, array.ndim))
        fh.write(struct.pack(f"<{array.ndim}Q", *array.shape))
        fh.write(array.astype("<f8", copy=False).tobytes())


def read_tensor(path) -> np.ndarray:
    with open(path, "rb") as fh:
        magic = fh.read(4)
        if magic != MAGIC:
            raise FormatError(f"{path}: bad magic {magic!r}")
        header = fh.read(8)
        if len(header) != 8:
            raise FormatError(f"{path}: truncated header")
        version, rank = struct.unpack("<II", header)
        if version != VERSION:
            raise FormatError(f"{path}: unsupported version {version}")
        extents_raw = fh.read(8 * rank)
        if len(extents_raw) != 8 * rank:
            raise FormatError(f"{path}: truncated extents")
        shape = struct.unpack(f"<{rank}Q", extents_raw)
        count = int(np.prod(shape)) if rank else 1
        payload = fh.read(8 * count)
        if len(payload) != 8 * count:
            raise FormatError(
                f"{path}: payload holds {len(payload) // 8} values, header implies {count}"
            )
        if fh.read(1):
            raise FormatError(f"{path}: trailing bytes after payload")
    return np.frombuffer(payload, dtype="<f8").reshape(shape).copy()


def save_dataset(ds: SnapshotDataset, path) -> None:
    path = Path(path)
    write_tensor(path, ds.snapshots)
    sidecar = {
        "benchmark": ds.benchmark,
        "params": ds.params,
        "grid": ds.grid,
        "global_min": ds.global_min,
        "global_max": ds.global_max,
    }
    path.with_suffix(".json").write_text(json.dumps(sidecar, indent=2))


def load_dataset(path) -> SnapshotDataset:
    path = Path(path)
    snapshots = read_tensor(path)
    meta = json.loads(path.with_suffix(".json").read_text())
    return SnapshotDataset(
        params=list(meta["params"]),
        snapshots=snapshots,
        grid=meta.get("grid", {}),
        global_min=float(meta["global_min"]),
        global_max=float(meta["global_max"]),
        benchmark=meta.get("benchmark", ""),
    )

"""Checkpoint format: JSON manifest + little-endian float64 flat binary.

A checkpoint stem `model` produces `model.json` (names, shapes, byte
offsets, plus any extra metadata such as the model config and vocabulary)
and `model.bin`. Round trips are bit-exact.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from ..errors import IoFailure
from .tensor import Tensor


def save_checkpoint(stem, params: dict[str, Tensor], metadata: dict | None = None) -> None:
    stem = Path(stem)
    entries = []
    offset = 0
    blobs = []
    for name in sorted(params):
        data = params[name].data
        raw = np.ascontiguousarray(data, dtype="<f8").tobytes()
        entries.append(
            {"name": name, "shape": list(data.shape), "offset": offset, "size": len(raw)}
        )
        blobs.append(raw)
        offset += len(raw)
    manifest = {"tensors": entries}
    if metadata:
        manifest.update(metadata)
    try:
        stem.parent.mkdir(parents=True, exist_ok=True)
        stem.with_suffix(".json").write_text(json.dumps(manifest, indent=1), encoding="utf-8")
        stem.with_suffix(".bin").write_bytes(b"".join(blobs))
    except OSError as exc:
        raise IoFailure(f"checkpoint write failed: {exc}") from exc


def load_checkpoint(stem) -> tuple[dict[str, Tensor], dict]:
    """Returns (params, manifest); params are trainable leaf tensors."""
    stem = Path(stem)
    try:
        manifest = json.loads(stem.with_suffix(".json").read_text(encoding="utf-8"))
        raw = stem.with_suffix(".bin").read_bytes()
    except OSError as exc:
        raise IoFailure(f"checkpoint read failed: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise IoFailure(f"checkpoint manifest corrupt: {exc}") from exc
    params: dict[str, Tensor] = {}
    for entry in manifest["tensors"]:
        chunk = raw[entry["offset"] : entry["offset"] + entry["size"]]
        data = np.frombuffer(chunk, dtype="<f8").reshape(entry["shape"]).copy()
        params[entry["name"]] = Tensor(data, requires_grad=True)
    return params, manifest

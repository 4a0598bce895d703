"""Saving and loading network specs and parameter stores.

Default layout: ``name.json`` holds the spec and layout version and names a
sidecar ``name.bin`` of little-endian float64 values. Portable mode puts
the values into the JSON file as a list instead.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .network import LAYOUT_VERSION, NetworkSpec, ParamStore, param_count


def save_spec(spec: NetworkSpec, path) -> None:
    Path(path).write_text(json.dumps(spec.to_dict(), indent=2) + "\n", encoding="utf-8")


def load_spec(path) -> NetworkSpec:
    return NetworkSpec.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def save_params(params: ParamStore, path, portable: bool = False) -> list[Path]:
    """Write ``params``; returns the files written."""
    path = Path(path)
    header = {
        "spec": params.spec.to_dict(),
        "layout_version": LAYOUT_VERSION,
        "n_params": len(params),
    }
    if portable:
        header["values"] = [float(v) for v in params.values]
        path.write_text(json.dumps(header) + "\n", encoding="utf-8")
        return [path]
    sidecar = path.with_suffix(".bin")
    header["values_file"] = sidecar.name
    params.values.astype("<f8").tofile(sidecar)
    path.write_text(json.dumps(header, indent=2) + "\n", encoding="utf-8")
    return [path, sidecar]


def load_params(path) -> ParamStore:
    path = Path(path)
    header = json.loads(path.read_text(encoding="utf-8"))
    if header.get("layout_version") != LAYOUT_VERSION:
        raise ValueError(f"unsupported layout version {header.get('layout_version')!r}")
    spec = NetworkSpec.from_dict(header["spec"])
    if "values" in header:
        values = np.asarray(header["values"], dtype=np.float64)
    else:
        values = np.fromfile(path.parent / header["values_file"], dtype="<f8").astype(np.float64)
    if values.size != param_count(spec):
        raise ValueError(f"expected {param_count(spec)} values, found {values.size}")
    return ParamStore(spec, values)

"""Canonical JSON output: quantized floats, stable layout, atomic writes.

Every command writes byte-identical files for identical inputs, so run
artifacts work as diffable golden files. Floats are quantized to 9
significant digits before serialization; key order is the insertion
order of the producing code.
"""

from __future__ import annotations

import json
import os
from pathlib import Path


def quantize_floats(obj):
    """Recursively round every float to 9 significant digits."""
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, float):
        return float(f"{obj:.9g}")
    if isinstance(obj, dict):
        return {k: quantize_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [quantize_floats(v) for v in obj]
    return obj


def dumps_canonical(obj) -> str:
    return json.dumps(quantize_floats(obj), indent=2) + "\n"


def write_atomic(path: str | Path, data: str | bytes) -> None:
    """Write via a temp file and rename, so readers never see partial files."""
    path = Path(path)
    tmp = path.with_name(f".{path.name}.tmp.{os.getpid()}")
    mode = "wb" if isinstance(data, bytes) else "w"
    with open(tmp, mode) as handle:
        handle.write(data)
    os.replace(tmp, path)


def write_json(path: str | Path, obj) -> None:
    write_atomic(path, dumps_canonical(obj))

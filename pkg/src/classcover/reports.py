"""Deterministic report writers: CSV/JSON bodies, timestamps in sidecars.

Report files must be byte-identical across reruns with the same config, so
floats are formatted with a fixed precision and anything time-dependent
goes to ``<name>.meta.json``.
"""

from __future__ import annotations

import datetime
import hashlib
import json
from pathlib import Path


def fmt_value(v) -> str:
    if v is None:
        return "never"
    if isinstance(v, float):
        return format(v, ".10g")
    return str(v)


def write_csv(path, header, rows) -> Path:
    path = Path(path)
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(fmt_value(v) for v in row))
    path.write_text("\n".join(lines) + "\n")
    return path


def write_json(path, obj) -> Path:
    path = Path(path)
    path.write_text(json.dumps(obj, indent=2, sort_keys=True, default=fmt_value) + "\n")
    return path


def write_sidecar(path, config_summary=None) -> Path:
    path = Path(path)
    body = path.read_bytes()
    meta = {
        "written_at": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        "sha256": hashlib.sha256(body).hexdigest(),
        "config": config_summary or {},
    }
    side = path.with_suffix(path.suffix + ".meta.json")
    side.write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")
    return side

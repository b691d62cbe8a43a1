"""Serialization: deterministic JSON, trajectory CSV, binary records.

JSON floats are written with 17 significant digits so every value
round-trips exactly.  The binary trajectory layout is:

    bytes 0..3    magic  b"BZTR"
    bytes 4..5    format version, uint16 little-endian (currently 1)
    byte  6       kind: 1 stirred, 2 interval fields, 3 rectangle fields
    byte  7       reserved (0)
    bytes 8..11   number of samples, uint32 little-endian
    bytes 12..15  state values per sample, uint32 little-endian

followed by the sample times (float64 little-endian) and then the state
array (float64, C order, shape samples x values-per-sample).
"""

from __future__ import annotations

import struct

import numpy as np

from .simulate import Trajectory

MAGIC = b"BZTR"
VERSION = 1
_KINDS = {"stirred_ode": 1, "pde_interval": 2, "pde_rectangle": 3}
_KIND_NAMES = {v: k for k, v in _KINDS.items()}


def json_text(obj) -> str:
    """Deterministic JSON with 17-significant-digit floats."""
    return _encode(obj)


def _encode(obj, indent=0) -> str:
    pad = " " * indent
    inner = " " * (indent + 2)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f'{inner}"{k}": {_encode(v, indent + 2)}' for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if len(obj) == 0:
            return "[]"
        items = [f"{inner}{_encode(v, indent + 2)}" for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    if isinstance(obj, (bool, np.bool_)) or obj is None:
        return "true" if obj else "null" if obj is None else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        if v != v or v in (float("inf"), float("-inf")):
            raise ValueError(f"non-finite float {v!r} in JSON output")
        return format(v, ".17g")
    if isinstance(obj, str):
        import json as _json
        return _json.dumps(obj)
    if isinstance(obj, np.ndarray):
        return _encode(obj.tolist(), indent)
    raise TypeError(f"cannot serialize {type(obj)!r}")


def write_json(path: str, obj) -> None:
    with open(path, "w") as fh:
        fh.write(json_text(obj))
        fh.write("\n")


def trajectory_csv_text(traj: Trajectory) -> str:
    """CSV export: ``t,u1,u2,u3`` for stirred runs; per-sample chunks of
    ``t,x[,y],u1,u2,u3`` rows for spatial runs."""
    lines = []
    if traj.states.ndim == 2:
        lines.append("t,u1,u2,u3")
        for t, row in zip(traj.t, traj.states):
            lines.append(f"{t:.17g},{row[0]:.17g},{row[1]:.17g},{row[2]:.17g}")
    elif traj.states.ndim == 3:
        lines.append("t,x,u1,u2,u3")
        xs = traj.axes[0]
        for t, snap in zip(traj.t, traj.states):
            for i, x in enumerate(xs):
                lines.append(f"{t:.17g},{x:.17g},"
                             f"{snap[0, i]:.17g},{snap[1, i]:.17g},{snap[2, i]:.17g}")
    elif traj.states.ndim == 4:
        lines.append("t,x,y,u1,u2,u3")
        xs, ys = traj.axes
        for t, snap in zip(traj.t, traj.states):
            for i, x in enumerate(xs):
                for j, y in enumerate(ys):
                    lines.append(f"{t:.17g},{x:.17g},{y:.17g},"
                                 f"{snap[0, i, j]:.17g},{snap[1, i, j]:.17g},"
                                 f"{snap[2, i, j]:.17g}")
    else:
        raise ValueError("unsupported trajectory rank")
    return "\n".join(lines) + "\n"


def write_trajectory_csv(path: str, traj: Trajectory) -> None:
    with open(path, "w") as fh:
        fh.write(trajectory_csv_text(traj))


def write_trajectory_binary(path: str, traj: Trajectory) -> None:
    model = traj.meta.get("model", "stirred_ode")
    kind = _KINDS[model]
    nsamples = len(traj.t)
    per_sample = int(np.prod(traj.states.shape[1:]))
    header = struct.pack("<4sHBBII", MAGIC, VERSION, kind, 0, nsamples, per_sample)
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(np.asarray(traj.t, dtype="<f8").tobytes())
        fh.write(np.ascontiguousarray(traj.states, dtype="<f8").tobytes())


def read_trajectory_binary(path: str) -> Trajectory:
    with open(path, "rb") as fh:
        header = fh.read(16)
        magic, version, kind, _, nsamples, per_sample = struct.unpack("<4sHBBII", header)
        if magic != MAGIC:
            raise ValueError("not a trajectory records file")
        if version != VERSION:
            raise ValueError(f"unsupported format version {version}")
        t = np.frombuffer(fh.read(8 * nsamples), dtype="<f8").copy()
        flat = np.frombuffer(fh.read(8 * nsamples * per_sample), dtype="<f8").copy()
    states = flat.reshape(nsamples, 3, per_sample // 3)
    if per_sample == 3:
        states = states.reshape(nsamples, 3)
    return Trajectory(t=t, states=states,
                      meta={"model": _KIND_NAMES[kind], "from_binary": True})

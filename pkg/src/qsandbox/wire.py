"""Wire encoding for frames and commands: line-oriented JSON messages.

Message types on the channel:
  server -> client: {"type": "hello", ...}, {"type": "frame", ...},
                    {"type": "error", "tag": ..., "message": ...}
  client -> server: {"type": "move" | "gate" | "measure" | "freeze" |
                     "unfreeze" | "reset" | "add", ..., "tag": optional}

Unknown fields are ignored on decode so either side can grow the schema.
Floats survive a round trip exactly (JSON carries the shortest repr).
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .errors import ContractError, WireError
from .gates import GateSpec
from .scene import (
    AddQubit,
    ApplyGate,
    Command,
    Freeze,
    Measure,
    MoveQubit,
    Reset,
    Scene,
    Unfreeze,
)
from .states import MAX_QUBITS, BlochAngles

PROTOCOL_VERSION = 1


@dataclass(frozen=True)
class FrameQubit:
    id: int
    position: tuple
    u: float
    v: float
    w: float
    radius: float
    entropy: float
    p0: float


@dataclass(frozen=True)
class FramePair:
    i: int
    j: int
    delta_r: float
    j_strength: float
    s_tilde: float
    overlap: float
    active: bool


@dataclass(frozen=True)
class Frame:
    sim_time: float
    frozen: bool
    qubits: tuple
    pairs: tuple
    last_event: str | None = None


def frame_from_scene(scene: Scene) -> Frame:
    data = scene.frame_data()
    return Frame(
        sim_time=data["sim_time"],
        frozen=data["frozen"],
        qubits=tuple(FrameQubit(position=tuple(q.pop("position")), **q)
                     for q in data["qubits"]),
        pairs=tuple(FramePair(**p) for p in data["pairs"]),
        last_event=data["last_event"],
    )


def hello_message(max_qubits: int = MAX_QUBITS) -> str:
    return json.dumps({"type": "hello", "protocol": PROTOCOL_VERSION,
                       "max_qubits": max_qubits})


def error_message(message: str, tag=None) -> str:
    return json.dumps({"type": "error", "tag": tag, "message": str(message)})


def encode_frame(frame: Frame) -> str:
    payload = {
        "type": "frame",
        "sim_time": frame.sim_time,
        "frozen": frame.frozen,
        "qubits": [{"id": q.id, "position": list(q.position), "u": q.u, "v": q.v,
                    "w": q.w, "radius": q.radius, "entropy": q.entropy, "p0": q.p0}
                   for q in frame.qubits],
        "pairs": [{"i": p.i, "j": p.j, "delta_r": p.delta_r,
                   "j_strength": p.j_strength, "s_tilde": p.s_tilde,
                   "overlap": p.overlap, "active": p.active}
                  for p in frame.pairs],
        "last_event": frame.last_event,
    }
    try:
        return json.dumps(payload, allow_nan=False)
    except ValueError as err:
        raise ContractError(f"frame contains non-finite values: {err}") from None


def _require(obj: dict, key: str, kinds, where: str):
    if key not in obj:
        raise WireError(f"{where}: missing field {key!r}")
    value = obj[key]
    if not isinstance(value, kinds):
        raise WireError(f"{where}: field {key!r} has wrong type {type(value).__name__}")
    return value


def _number(obj, key, where) -> float:
    value = _require(obj, key, (int, float), where)
    if isinstance(value, bool):
        raise WireError(f"{where}: field {key!r} has wrong type bool")
    if not math.isfinite(value):
        raise WireError(f"{where}: field {key!r} is not finite")
    return float(value)


def _parse_json(text: str, where: str) -> dict:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as err:
        raise WireError(f"{where}: invalid JSON at position {err.pos}: {err.msg}") from None
    if not isinstance(obj, dict):
        raise WireError(f"{where}: expected a JSON object")
    return obj


def decode_frame(text: str) -> Frame:
    obj = _parse_json(text, "frame")
    if obj.get("type") != "frame":
        raise WireError(f"frame: unexpected type {obj.get('type')!r}")
    qubits = []
    for q in _require(obj, "qubits", list, "frame"):
        pos = _require(q, "position", list, "frame.qubit")
        qubits.append(FrameQubit(
            id=int(_number(q, "id", "frame.qubit")),
            position=tuple(float(c) for c in pos),
            u=_number(q, "u", "frame.qubit"), v=_number(q, "v", "frame.qubit"),
            w=_number(q, "w", "frame.qubit"),
            radius=_number(q, "radius", "frame.qubit"),
            entropy=_number(q, "entropy", "frame.qubit"),
            p0=_number(q, "p0", "frame.qubit"),
        ))
    pairs = []
    for p in _require(obj, "pairs", list, "frame"):
        pairs.append(FramePair(
            i=int(_number(p, "i", "frame.pair")), j=int(_number(p, "j", "frame.pair")),
            delta_r=_number(p, "delta_r", "frame.pair"),
            j_strength=_number(p, "j_strength", "frame.pair"),
            s_tilde=_number(p, "s_tilde", "frame.pair"),
            overlap=_number(p, "overlap", "frame.pair"),
            active=bool(_require(p, "active", bool, "frame.pair")),
        ))
    return Frame(
        sim_time=_number(obj, "sim_time", "frame"),
        frozen=bool(_require(obj, "frozen", bool, "frame")),
        qubits=tuple(qubits),
        pairs=tuple(pairs),
        last_event=obj.get("last_event"),
    )


_COMMAND_TYPES = ("move", "gate", "measure", "freeze", "unfreeze", "reset", "add")


def encode_command(cmd: Command, tag=None) -> str:
    if isinstance(cmd, MoveQubit):
        payload = {"type": "move", "id": cmd.qubit_id, "position": list(cmd.position)}
    elif isinstance(cmd, ApplyGate):
        payload = {"type": "gate", "name": cmd.gate.name,
                   "targets": list(cmd.gate.targets)}
    elif isinstance(cmd, Measure):
        payload = {"type": "measure", "id": cmd.qubit_id}
    elif isinstance(cmd, Freeze):
        payload = {"type": "freeze"}
    elif isinstance(cmd, Unfreeze):
        payload = {"type": "unfreeze"}
    elif isinstance(cmd, Reset):
        payload = {"type": "reset"}
        if cmd.seed is not None:
            payload["seed"] = cmd.seed
    elif isinstance(cmd, AddQubit):
        payload = {"type": "add", "theta": cmd.angles.theta, "phi": cmd.angles.phi,
                   "position": list(cmd.position)}
    else:
        raise ContractError(f"cannot encode {type(cmd).__name__}")
    if tag is not None:
        payload["tag"] = tag
    return json.dumps(payload, allow_nan=False)


def decode_command(text: str):
    """Decode one inbound command message; returns (Command, tag)."""
    obj = _parse_json(text, "command")
    kind = obj.get("type")
    tag = obj.get("tag")
    where = f"command {kind!r}"
    if kind not in _COMMAND_TYPES:
        raise WireError(f"command: unknown variant {kind!r}")
    if kind == "move":
        pos = _require(obj, "position", list, where)
        if len(pos) != 3:
            raise WireError(f"{where}: position needs 3 components")
        return MoveQubit(int(_number(obj, "id", where)),
                         tuple(float(c) for c in pos)), tag
    if kind == "gate":
        name = _require(obj, "name", str, where)
        targets = _require(obj, "targets", list, where)
        try:
            return ApplyGate(GateSpec(name.upper(), tuple(int(t) for t in targets))), tag
        except (ContractError, TypeError, ValueError) as err:
            raise WireError(f"{where}: {err}") from None
    if kind == "measure":
        return Measure(int(_number(obj, "id", where))), tag
    if kind == "freeze":
        return Freeze(), tag
    if kind == "unfreeze":
        return Unfreeze(), tag
    if kind == "reset":
        seed = obj.get("seed")
        if seed is not None and not isinstance(seed, int):
            raise WireError(f"{where}: seed must be an integer")
        return Reset(seed), tag
    # add
    pos = _require(obj, "position", list, where)
    if len(pos) != 3:
        raise WireError(f"{where}: position needs 3 components")
    try:
        angles = BlochAngles(_number(obj, "theta", where), _number(obj, "phi", where))
    except ContractError as err:
        raise WireError(f"{where}: {err}") from None
    return AddQubit(angles, tuple(float(c) for c in pos)), tag

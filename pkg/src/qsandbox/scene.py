"""Deterministic interactive core: qubit entities, tick loop, commands, events.

One logical thread owns a Scene and mutates it through tick() and apply();
everything handed outward (reports, frame data) is a value copy. The rng is
owned by the scene and is only consumed by measurements and reset reseeding,
so a (spawn spec, seed, command sequence) triple fully determines a run.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .entropy import EntanglementReport, build_report
from .errors import ContractError, EngineHalt
from .exchange import CouplingParams, PairCoupling, coupling_strength, evolve_scene_step, pair_distance
from .gates import GateSpec, embed_gate, apply_unitary
from .measure import measure_collapse
from .states import (
    MAX_QUBITS,
    BlochAngles,
    bloch_radius,
    density_from_state,
    state_from_angles,
    validate_density,
)
from .linalg import tensor_product
from .states import DensityMatrix

DEFAULT_DT = 1.0 / 240.0

# Validity gate applied after every tick; evolution must stay well inside it.
TICK_VALIDITY_TOL = 1e-7

# A pair's arc is "live" once its pairwise parameter clears this floor.
ARC_EPS = 1e-6


def overlap_indicator(delta_r: float, theta_d: float) -> float:
    """Geometric stand-in for wavefunction overlap: a Gaussian in distance.

    sigma = theta_d/4; clamped to 0 at delta_r >= theta_d like the coupling.
    """
    if delta_r < 0:
        raise ContractError(f"delta_r must be >= 0, got {delta_r}")
    if delta_r >= theta_d:
        return 0.0
    sigma = theta_d / 4.0
    return math.exp(-(delta_r ** 2) / (2.0 * sigma ** 2))


# ---------------------------------------------------------------------------
# commands and events

@dataclass(frozen=True)
class MoveQubit:
    qubit_id: int
    position: tuple
    issued_at: float | None = None


@dataclass(frozen=True)
class ApplyGate:
    gate: GateSpec
    issued_at: float | None = None


@dataclass(frozen=True)
class Measure:
    qubit_id: int
    issued_at: float | None = None


@dataclass(frozen=True)
class Freeze:
    issued_at: float | None = None


@dataclass(frozen=True)
class Unfreeze:
    issued_at: float | None = None


@dataclass(frozen=True)
class Reset:
    seed: int | None = None
    issued_at: float | None = None


@dataclass(frozen=True)
class AddQubit:
    angles: BlochAngles
    position: tuple
    issued_at: float | None = None


Command = MoveQubit | ApplyGate | Measure | Freeze | Unfreeze | Reset | AddQubit


@dataclass(frozen=True)
class Event:
    sim_time: float
    seq: int
    kind: str  # tick | command | measurement | entangle_on | entangle_off
    payload: dict


@dataclass
class QubitEntity:
    id: int
    position: tuple
    spawn_state: BlochAngles


@dataclass(frozen=True)
class SpawnSpec:
    angles: BlochAngles
    position: tuple


def _check_position(position) -> tuple:
    pos = tuple(float(c) for c in position)
    if len(pos) != 3 or not all(math.isfinite(c) for c in pos):
        raise ContractError(f"position must be 3 finite reals, got {position}")
    return pos


# ---------------------------------------------------------------------------

class Scene:
    """The simulation scene: entities + global density matrix + clock + log."""

    def __init__(self, spawn, params: CouplingParams | None = None,
                 dt: float = DEFAULT_DT, seed: int = 0):
        if dt <= 0:
            raise ContractError(f"dt must be positive, got {dt}")
        spawn = [SpawnSpec(s.angles, _check_position(s.position))
                 if isinstance(s, SpawnSpec) else SpawnSpec(s[0], _check_position(s[1]))
                 for s in spawn]
        if not 1 <= len(spawn) <= MAX_QUBITS:
            raise ContractError(f"scene needs 1..{MAX_QUBITS} qubits, got {len(spawn)}")
        self.spawn_spec = tuple(spawn)
        self.params = params or CouplingParams()
        self.dt = float(dt)
        self.events: list[Event] = []
        self._seq = 0
        self._build(int(seed))

    def _build(self, seed: int):
        self.seed = seed
        self.rng = np.random.Generator(np.random.PCG64(seed))
        self.qubits = [QubitEntity(i, s.position, s.angles)
                       for i, s in enumerate(self.spawn_spec)]
        rho = density_from_state(state_from_angles(self.spawn_spec[0].angles))
        for s in self.spawn_spec[1:]:
            single = density_from_state(state_from_angles(s.angles))
            rho = DensityMatrix(rho.n_qubits + 1, tensor_product(rho.mat, single.mat))
        self.rho = rho
        self.sim_time = 0.0
        self.frozen = False
        self._active = {pair: False for pair in self.pair_ids()}
        self.report = build_report(self.rho)
        self._emit("command", {"command": "init", "seed": seed,
                               "qubits": len(self.qubits)})

    # -- helpers ------------------------------------------------------------

    @property
    def n_qubits(self) -> int:
        return len(self.qubits)

    def pair_ids(self):
        return list(combinations(range(self.n_qubits), 2))

    def pair_geometry(self):
        """[(i, j, delta_r, j_strength)] for every pair, ascending (i, j)."""
        out = []
        for i, j in self.pair_ids():
            dr = pair_distance(self.qubits[i].position, self.qubits[j].position)
            out.append((i, j, dr, coupling_strength(dr, self.params)))
        return out

    def overlap(self, i: int, j: int) -> float:
        if not 0 <= i < j < self.n_qubits:
            raise ContractError(f"invalid pair ({i}, {j})")
        dr = pair_distance(self.qubits[i].position, self.qubits[j].position)
        return overlap_indicator(dr, self.params.theta_d)

    def _emit(self, kind: str, payload: dict) -> Event:
        event = Event(self.sim_time, self._seq, kind, payload)
        self._seq += 1
        self.events.append(event)
        return event

    def last_event(self) -> Event | None:
        return self.events[-1] if self.events else None

    # -- tick ---------------------------------------------------------------

    def tick(self, dt: float | None = None):
        """Advance physics one step. Frozen scenes ignore ticks entirely."""
        if self.frozen:
            return
        dt = self.dt if dt is None else dt
        if dt <= 0:
            raise ContractError(f"dt must be positive, got {dt}")

        geometry = self.pair_geometry()
        active = [PairCoupling(i, j, strength, dr)
                  for i, j, dr, strength in geometry if strength > 0.0]
        rho = evolve_scene_step(self.rho, active, dt)

        validity = validate_density(rho, TICK_VALIDITY_TOL)
        if not validity.passed:
            self._emit("tick", {"halt": str(validity)})
            raise EngineHalt(f"density matrix invalid after tick: {validity}", validity)

        self.rho = rho
        self.report = build_report(rho)
        for i, j, dr, strength in geometry:
            now_active = strength > 0.0
            if now_active != self._active[(i, j)]:
                kind = "entangle_on" if now_active else "entangle_off"
                self._emit(kind, {"i": i, "j": j, "delta_r": float(dr),
                                  "s_tilde": float(self.report.pair_parameters[(i, j)])})
                self._active[(i, j)] = now_active
        self.sim_time += dt

    # -- commands -----------------------------------------------------------

    def apply(self, cmd: Command) -> Event:
        """Apply one command; invalid references log a rejected command event."""
        try:
            return self._dispatch(cmd)
        except ContractError as err:
            return self._emit("command", {"command": type(cmd).__name__,
                                          "rejected": True, "reason": str(err)})

    def _dispatch(self, cmd: Command) -> Event:
        if isinstance(cmd, MoveQubit):
            self._check_qubit(cmd.qubit_id)
            pos = _check_position(cmd.position)
            self.qubits[cmd.qubit_id].position = pos
            return self._emit("command", {"command": "move", "id": cmd.qubit_id,
                                          "position": list(pos)})
        if isinstance(cmd, ApplyGate):
            u = embed_gate(cmd.gate, self.n_qubits)
            self.rho = apply_unitary(self.rho, u)
            self.report = build_report(self.rho)
            return self._emit("command", {"command": "gate", "name": cmd.gate.name,
                                          "targets": list(cmd.gate.targets)})
        if isinstance(cmd, Measure):
            self._check_qubit(cmd.qubit_id)
            outcome, collapsed = measure_collapse(self.rho, cmd.qubit_id, self.rng)
            self.rho = collapsed
            self.report = build_report(self.rho)
            return self._emit("measurement", {"qubit": outcome.qubit, "s": outcome.s,
                                              "p0": outcome.p0, "p1": outcome.p1,
                                              "draw": outcome.rng_draw})
        if isinstance(cmd, Freeze):
            self.frozen = True
            return self._emit("command", {"command": "freeze"})
        if isinstance(cmd, Unfreeze):
            self.frozen = False
            return self._emit("command", {"command": "unfreeze"})
        if isinstance(cmd, Reset):
            seed = cmd.seed if cmd.seed is not None else int(self.rng.integers(1, 2 ** 63))
            self.events = []
            self._build(int(seed))
            return self.events[-1]
        if isinstance(cmd, AddQubit):
            if self.n_qubits >= MAX_QUBITS:
                raise ContractError(f"scene already holds {MAX_QUBITS} qubits")
            pos = _check_position(cmd.position)
            single = density_from_state(state_from_angles(cmd.angles))
            self.rho = DensityMatrix(self.n_qubits + 1,
                                     tensor_product(self.rho.mat, single.mat))
            new_id = len(self.qubits)
            self.qubits.append(QubitEntity(new_id, pos, cmd.angles))
            for pair in self.pair_ids():
                self._active.setdefault(pair, False)
            self.report = build_report(self.rho)
            return self._emit("command", {"command": "add", "id": new_id,
                                          "theta": cmd.angles.theta, "phi": cmd.angles.phi,
                                          "position": list(pos)})
        raise ContractError(f"unknown command {type(cmd).__name__}")

    def _check_qubit(self, qubit_id: int):
        if not 0 <= qubit_id < self.n_qubits:
            raise ContractError(f"qubit {qubit_id} does not exist")

    # -- snapshots ----------------------------------------------------------

    def frame_data(self) -> dict:
        """Plain-value snapshot of everything a viewer needs."""
        qubits = []
        for q in self.qubits:
            b = self.report.per_qubit_bloch[q.id]
            qubits.append({
                "id": q.id,
                "position": list(q.position),
                "u": b.u, "v": b.v, "w": b.w,
                "radius": bloch_radius(b),
                "entropy": self.report.per_qubit_entropy[q.id],
                "p0": (1.0 + b.w) / 2.0,
            })
        pairs = []
        for i, j, dr, strength in self.pair_geometry():
            s_tilde = float(self.report.pair_parameters[(i, j)])
            pairs.append({
                "i": i, "j": j,
                "delta_r": float(dr),
                "j_strength": float(strength),
                "s_tilde": s_tilde,
                "overlap": overlap_indicator(dr, self.params.theta_d),
                "active": bool(dr < self.params.theta_d and s_tilde > ARC_EPS),
            })
        last = self.last_event()
        if last is None:
            summary = None
        elif last.kind == "measurement":
            summary = f"measurement: qubit {last.payload['qubit']} -> {last.payload['s']}"
        elif last.kind in ("entangle_on", "entangle_off"):
            summary = f"{last.kind}: ({last.payload['i']}, {last.payload['j']})"
        else:
            summary = f"command: {last.payload.get('command', '?')}"
        return {
            "sim_time": float(self.sim_time),
            "frozen": bool(self.frozen),
            "qubits": qubits,
            "pairs": pairs,
            "last_event": summary,
        }

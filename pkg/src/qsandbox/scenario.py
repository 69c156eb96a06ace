"""Scenario scripts: parsing, deterministic replay, time series and logs.

Script format (one directive per line, '#' starts a comment):

    seed 42                 # unsigned 64-bit, default 0
    dt 0.004166666666666667 # step in simulated seconds, default 1/240
    jmax 1.0                # coupling peak, default 1.0
    thetad 5.0              # coupling cutoff distance, default 5.0
    duration 10.0           # run length in script seconds; default runs one
                            # tick past the last command
    qubit 0 0.0 0.0  0.0 0.0 0.0      # id theta phi x y z
    at 1.0 move 0 1.0 0.0 0.0
    at 1.5 gate H 0
    at 1.5 gate CNOT 0 1
    at 2.0 measure 0
    at 3.0 freeze
    at 4.0 unfreeze
    at 5.0 reset [seed]
    at 6.0 add 1.5708 0.0  2.0 0.0 0.0  # theta phi x y z

Commands at identical timestamps apply in file order, at the start of the
tick whose window contains them. The script clock always advances, so
freeze/unfreeze pairs behave like they do in live mode: while frozen the
physics clock stands still but later commands still fire on schedule.

The time-series column order is frozen (see `columns_for`): sim_time, then
q{i}_p0, q{i}_u, q{i}_v, q{i}_w, q{i}_radius, q{i}_s2 per qubit, then
pair{i}{j}_delta_r, pair{i}{j}_j, pair{i}{j}_s_tilde per pair, sized to the
largest qubit count the script can reach. Cells for not-yet-added qubits
are empty.
"""
from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from itertools import combinations

from .errors import ContractError, ScriptError
from .exchange import CouplingParams
from .gates import GATE_ARITY, GateSpec
from .scene import (
    DEFAULT_DT,
    AddQubit,
    ApplyGate,
    Command,
    Event,
    Freeze,
    Measure,
    MoveQubit,
    Reset,
    Scene,
    SpawnSpec,
    Unfreeze,
)
from .states import MAX_QUBITS, BlochAngles

_DISPATCH_SLACK = 1e-9  # absolute slack when matching command times to ticks


@dataclass(frozen=True)
class ScheduledCommand:
    time: float
    command: Command
    line: int


@dataclass
class ScenarioScript:
    seed: int = 0
    dt: float = DEFAULT_DT
    params: CouplingParams = field(default_factory=CouplingParams)
    duration: float | None = None
    qubits: list = field(default_factory=list)  # SpawnSpec, ordered by id
    commands: list = field(default_factory=list)  # ScheduledCommand, time-ordered

    @property
    def max_qubits(self) -> int:
        count = peak = len(self.qubits)
        for sc in self.commands:
            if isinstance(sc.command, AddQubit):
                count += 1
                peak = max(peak, count)
            elif isinstance(sc.command, Reset):
                count = len(self.qubits)
        return peak


def _floats(parts, n, line):
    if len(parts) != n:
        raise ScriptError(f"expected {n} numeric fields, got {len(parts)}", line)
    try:
        return [float(p) for p in parts]
    except ValueError as err:
        raise ScriptError(str(err), line) from None


def _angles(theta, phi, line) -> BlochAngles:
    try:
        return BlochAngles(theta, phi)
    except ContractError as err:
        raise ScriptError(str(err), line) from None


def parse_script(text: str) -> ScenarioScript:
    """Parse and statically validate a scenario script."""
    script = ScenarioScript()
    seen_headers = set()
    declared = {}  # id -> SpawnSpec
    commands = []

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        key = parts[0].lower()

        if key in ("seed", "dt", "jmax", "thetad", "duration"):
            if key in seen_headers:
                raise ScriptError(f"duplicate header {key!r}", line_no)
            seen_headers.add(key)
            if len(parts) != 2:
                raise ScriptError(f"{key} takes one value", line_no)
            try:
                value = int(parts[1]) if key == "seed" else float(parts[1])
            except ValueError as err:
                raise ScriptError(str(err), line_no) from None
            if key == "seed":
                if not 0 <= value < 2 ** 64:
                    raise ScriptError("seed must fit in unsigned 64 bits", line_no)
                script.seed = value
            elif key == "dt":
                if value <= 0:
                    raise ScriptError("dt must be positive", line_no)
                script.dt = value
            elif key == "duration":
                if value < 0:
                    raise ScriptError("duration must be >= 0", line_no)
                script.duration = value
            elif key == "jmax":
                script.params = CouplingParams(value, script.params.theta_d)
            else:
                script.params = CouplingParams(script.params.j_max, value)
            continue

        if key == "qubit":
            if len(parts) != 7:
                raise ScriptError("qubit takes: id theta phi x y z", line_no)
            try:
                qid = int(parts[1])
            except ValueError as err:
                raise ScriptError(str(err), line_no) from None
            if qid in declared:
                raise ScriptError(f"qubit {qid} declared twice", line_no)
            theta, phi, x, y, z = _floats(parts[2:], 5, line_no)
            declared[qid] = SpawnSpec(_angles(theta, phi, line_no), (x, y, z))
            continue

        if key == "at":
            if len(parts) < 3:
                raise ScriptError("at takes: at <time> <command> ...", line_no)
            try:
                when = float(parts[1])
            except ValueError as err:
                raise ScriptError(str(err), line_no) from None
            if when < 0:
                raise ScriptError("command time must be >= 0", line_no)
            commands.append((when, _parse_command(parts[2:], line_no), line_no))
            continue

        raise ScriptError(f"unknown directive {parts[0]!r}", line_no)

    if not declared:
        raise ScriptError("script declares no qubits", None)
    ids = sorted(declared)
    if ids != list(range(len(ids))):
        raise ScriptError(f"qubit ids must be dense 0..n-1, got {ids}", None)
    if len(ids) > MAX_QUBITS:
        raise ScriptError(f"at most {MAX_QUBITS} qubits, got {len(ids)}", None)
    script.qubits = [declared[i] for i in ids]

    # stable sort keeps file order within equal timestamps
    commands.sort(key=lambda item: item[0])
    script.commands = [ScheduledCommand(t, c, ln) for t, c, ln in commands]
    _check_references(script)
    return script


def _parse_command(parts, line) -> Command:
    action = parts[0].lower()
    args = parts[1:]
    if action == "move":
        if len(args) != 4:
            raise ScriptError("move takes: id x y z", line)
        qid = _int_field(args[0], line)
        x, y, z = _floats(args[1:], 3, line)
        return MoveQubit(qid, (x, y, z))
    if action == "gate":
        if not args:
            raise ScriptError("gate takes: name targets...", line)
        name = args[0].upper()
        if name not in GATE_ARITY:
            raise ScriptError(f"unknown gate {args[0]!r}", line)
        targets = tuple(_int_field(a, line) for a in args[1:])
        try:
            return ApplyGate(GateSpec(name, targets))
        except ContractError as err:
            raise ScriptError(str(err), line) from None
    if action == "measure":
        if len(args) != 1:
            raise ScriptError("measure takes: id", line)
        return Measure(_int_field(args[0], line))
    if action == "freeze":
        if args:
            raise ScriptError("freeze takes no arguments", line)
        return Freeze()
    if action == "unfreeze":
        if args:
            raise ScriptError("unfreeze takes no arguments", line)
        return Unfreeze()
    if action == "reset":
        if len(args) > 1:
            raise ScriptError("reset takes at most: seed", line)
        seed = _int_field(args[0], line) if args else None
        return Reset(seed)
    if action == "add":
        if len(args) != 5:
            raise ScriptError("add takes: theta phi x y z", line)
        theta, phi, x, y, z = _floats(args, 5, line)
        return AddQubit(_angles(theta, phi, line), (x, y, z))
    raise ScriptError(f"unknown command {parts[0]!r}", line)


def _int_field(text, line) -> int:
    try:
        return int(text)
    except ValueError:
        raise ScriptError(f"expected an integer, got {text!r}", line) from None


def _check_references(script: ScenarioScript):
    """Static id checks, tracking adds and resets along the command order."""
    count = len(script.qubits)
    for sc in script.commands:
        cmd = sc.command
        if isinstance(cmd, AddQubit):
            if count >= MAX_QUBITS:
                raise ScriptError(f"add would exceed {MAX_QUBITS} qubits", sc.line)
            count += 1
        elif isinstance(cmd, Reset):
            count = len(script.qubits)
        elif isinstance(cmd, (MoveQubit, Measure)):
            qid = cmd.qubit_id
            if qid >= count:
                raise ScriptError(f"qubit {qid} does not exist at that time", sc.line)
        elif isinstance(cmd, ApplyGate):
            bad = [t for t in cmd.gate.targets if t >= count]
            if bad:
                raise ScriptError(f"gate targets {bad} do not exist at that time", sc.line)


# ---------------------------------------------------------------------------
# running

@dataclass
class RunResult:
    scene: Scene
    columns: list
    rows: list  # one list per sampled tick; cells are float or None
    events: list  # Event


def columns_for(max_qubits: int) -> list:
    cols = ["sim_time"]
    for q in range(max_qubits):
        cols += [f"q{q}_p0", f"q{q}_u", f"q{q}_v", f"q{q}_w", f"q{q}_radius", f"q{q}_s2"]
    for i, j in combinations(range(max_qubits), 2):
        cols += [f"pair{i}{j}_delta_r", f"pair{i}{j}_j", f"pair{i}{j}_s_tilde"]
    return cols


def _sample(scene: Scene, max_qubits: int) -> list:
    data = scene.frame_data()
    row = [data["sim_time"]]
    by_id = {q["id"]: q for q in data["qubits"]}
    for q in range(max_qubits):
        info = by_id.get(q)
        if info is None:
            row += [None] * 6
        else:
            row += [info["p0"], info["u"], info["v"], info["w"],
                    info["radius"], info["entropy"]]
    by_pair = {(p["i"], p["j"]): p for p in data["pairs"]}
    for i, j in combinations(range(max_qubits), 2):
        info = by_pair.get((i, j))
        if info is None:
            row += [None] * 3
        else:
            row += [info["delta_r"], info["j_strength"], info["s_tilde"]]
    return row


def run_scenario(script: ScenarioScript, seed: int | None = None,
                 dt: float | None = None) -> RunResult:
    """Replay a script deterministically; returns the final scene, time series
    and event log. `seed` and `dt` override the script header when given."""
    run_dt = script.dt if dt is None else dt
    run_seed = script.seed if seed is None else seed
    if run_dt <= 0:
        raise ContractError(f"dt must be positive, got {run_dt}")

    duration = script.duration
    if duration is None:
        last = max((sc.time for sc in script.commands), default=0.0)
        duration = last + run_dt if script.commands else 0.0
    n_ticks = int(round(duration / run_dt))

    scene = Scene(script.qubits, script.params, run_dt, run_seed)
    max_qubits = script.max_qubits
    columns = columns_for(max_qubits)
    # a run with no ticks exports a header-only series
    rows = [_sample(scene, max_qubits)] if n_ticks > 0 else []

    pending = list(script.commands)
    cursor = 0
    for k in range(n_ticks):
        clock = k * run_dt
        while cursor < len(pending) and pending[cursor].time <= clock + _DISPATCH_SLACK:
            sc = pending[cursor]
            cmd = sc.command
            # rebuild with the script time stamped on, for the log
            scene.apply(_stamp(cmd, clock))
            cursor += 1
        scene.tick()
        rows.append(_sample(scene, max_qubits))

    return RunResult(scene, columns, rows, list(scene.events))


def _stamp(cmd: Command, when: float) -> Command:
    from dataclasses import replace

    return replace(cmd, issued_at=when)


# ---------------------------------------------------------------------------
# output writers

def write_csv(path, columns, rows):
    """Fixed-column CSV; floats via repr so replays are byte-identical."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(columns)
        for row in rows:
            writer.writerow(["" if cell is None else repr(float(cell)) for cell in row])


def write_events(path, events):
    """Line-delimited JSON, one event per line, keys sorted."""
    with open(path, "w") as fh:
        for event in events:
            fh.write(event_line(event) + "\n")


def event_line(event: Event) -> str:
    record = {"seq": event.seq, "sim_time": event.sim_time,
              "kind": event.kind, "payload": event.payload}
    return json.dumps(record, sort_keys=True)

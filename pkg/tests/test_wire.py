import json
import math

import pytest

from qsandbox.errors import ContractError, WireError
from qsandbox.exchange import CouplingParams
from qsandbox.gates import GateSpec
from qsandbox.scene import (
    AddQubit,
    ApplyGate,
    Freeze,
    Measure,
    MoveQubit,
    Reset,
    Scene,
    Unfreeze,
)
from qsandbox.states import BlochAngles
from qsandbox.wire import (
    Frame,
    FramePair,
    FrameQubit,
    decode_command,
    decode_frame,
    encode_command,
    encode_frame,
    frame_from_scene,
    hello_message,
)


def busy_scene():
    scene = Scene([
        (BlochAngles(math.pi, 0.0), (0.0, 0.0, 0.0)),
        (BlochAngles(0.0, 0.0), (1.0, 0.0, 0.0)),
        (BlochAngles(math.pi / 2, 1.0), (9.0, 2.0, -3.5)),
    ], CouplingParams(), seed=3)
    for _ in range(60):
        scene.tick()
    scene.apply(Measure(2))
    return scene


class TestFrameCodec:
    def test_round_trip_full_scene(self):
        frame = frame_from_scene(busy_scene())
        assert decode_frame(encode_frame(frame)) == frame

    def test_unknown_fields_ignored(self):
        frame = frame_from_scene(busy_scene())
        obj = json.loads(encode_frame(frame))
        obj["future_field"] = {"nested": True}
        obj["qubits"][0]["future_metric"] = 12.5
        obj["pairs"][0]["shimmer"] = "lots"
        assert decode_frame(json.dumps(obj)) == frame

    def test_missing_field_rejected(self):
        frame = frame_from_scene(busy_scene())
        obj = json.loads(encode_frame(frame))
        del obj["qubits"][0]["radius"]
        with pytest.raises(WireError):
            decode_frame(json.dumps(obj))

    def test_nan_refused_on_encode(self):
        qubit = FrameQubit(0, (0.0, 0.0, 0.0), math.nan, 0, 0, 1, 0, 1)
        frame = Frame(0.0, False, (qubit,), ())
        with pytest.raises(ContractError):
            encode_frame(frame)

    def test_wrong_type_rejected(self):
        with pytest.raises(WireError):
            decode_frame(json.dumps({"type": "hello"}))

    def test_malformed_json_carries_position(self):
        with pytest.raises(WireError) as err:
            decode_frame('{"type": "frame", ')
        assert "position" in str(err.value)

    def test_bool_not_accepted_as_number(self):
        frame = frame_from_scene(busy_scene())
        obj = json.loads(encode_frame(frame))
        obj["sim_time"] = True
        with pytest.raises(WireError):
            decode_frame(json.dumps(obj))


class TestCommandCodec:
    @pytest.mark.parametrize("cmd", [
        MoveQubit(1, (0.5, -2.0, 3.25)),
        ApplyGate(GateSpec("H", (0,))),
        ApplyGate(GateSpec("CNOT", (2, 0))),
        Measure(2),
        Freeze(),
        Unfreeze(),
        Reset(),
        Reset(seed=77),
        AddQubit(BlochAngles(1.0, 2.0), (1.0, 1.0, 1.0)),
    ])
    def test_round_trip(self, cmd):
        decoded, tag = decode_command(encode_command(cmd))
        assert decoded == cmd
        assert tag is None

    def test_tag_passthrough(self):
        decoded, tag = decode_command(encode_command(Measure(0), tag="req-9"))
        assert decoded == Measure(0)
        assert tag == "req-9"

    def test_unknown_variant(self):
        with pytest.raises(WireError) as err:
            decode_command(json.dumps({"type": "teleport", "id": 0}))
        assert "teleport" in str(err.value)

    def test_gate_name_case_insensitive(self):
        decoded, _ = decode_command(json.dumps(
            {"type": "gate", "name": "cnot", "targets": [0, 1]}))
        assert decoded == ApplyGate(GateSpec("CNOT", (0, 1)))

    def test_bad_gate_reported(self):
        with pytest.raises(WireError):
            decode_command(json.dumps({"type": "gate", "name": "T", "targets": [0]}))

    def test_bad_position_length(self):
        with pytest.raises(WireError):
            decode_command(json.dumps({"type": "move", "id": 0, "position": [1, 2]}))

    def test_non_object_rejected(self):
        with pytest.raises(WireError):
            decode_command("[1, 2, 3]")

    def test_add_angle_validation(self):
        with pytest.raises(WireError):
            decode_command(json.dumps(
                {"type": "add", "theta": 9.0, "phi": 0.0, "position": [0, 0, 0]}))


def test_hello_message_shape():
    obj = json.loads(hello_message())
    assert obj == {"type": "hello", "protocol": 1, "max_qubits": 3}

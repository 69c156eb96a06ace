"""End-to-end over a real network socket: uvicorn + websockets client.

Covers the cockpit's consumption path: static assets at /, the /config
descriptor, and the drag-inside / entangle / freeze-measure arc lifecycle
over the live protocol.
"""
import json
import math
import socket
import threading
import time

import httpx
import pytest
import uvicorn
from websockets.sync.client import connect

from qsandbox.config import Config
from qsandbox.service import create_app
from qsandbox.states import BlochAngles

UP = BlochAngles(0.0, 0.0)
DOWN = BlochAngles(math.pi, 0.0)


def _free_port() -> int:
    with socket.socket() as sock:
        sock.bind(("127.0.0.1", 0))
        return sock.getsockname()[1]


@pytest.fixture
def live_server():
    port = _free_port()
    spawn = ((DOWN, (0.0, 0.0, 0.0)), (UP, (9.0, 0.0, 0.0)))
    app = create_app(Config(seed=505, port=port), spawn=spawn)
    server = uvicorn.Server(uvicorn.Config(app, host="127.0.0.1", port=port,
                                           log_level="warning"))
    thread = threading.Thread(target=server.run, daemon=True)
    thread.start()
    deadline = time.monotonic() + 10
    while not server.started:
        if time.monotonic() > deadline:
            pytest.fail("server did not start")
        time.sleep(0.02)
    yield f"127.0.0.1:{port}"
    server.should_exit = True
    thread.join(timeout=5)


def recv_frames(ws, timeout=8.0):
    deadline = time.monotonic() + timeout
    while time.monotonic() < deadline:
        msg = json.loads(ws.recv(timeout=timeout))
        if msg.get("type") == "frame":
            yield msg


def test_http_surface(live_server):
    config = httpx.get(f"http://{live_server}/config").json()
    assert config["ws_path"] == "/ws"
    assert config["theta_d"] == 5.0

    from pathlib import Path

    if Path("frontend/dist/index.html").is_file():
        index = httpx.get(f"http://{live_server}/")
        assert index.status_code == 200
        assert "qsandbox" in index.text
        main_js = httpx.get(f"http://{live_server}/main.js")
        assert main_js.status_code == 200


def test_drag_entangle_measure_session(live_server):
    with connect(f"ws://{live_server}/ws") as ws:
        hello = json.loads(ws.recv(timeout=5))
        assert hello == {"type": "hello", "protocol": 1, "max_qubits": 3}

        # drag qubit 1 inside the coupling range (one jump, like a fast drag)
        ws.send(json.dumps({"type": "move", "id": 1, "position": [1.0, 0.0, 0.0],
                            "tag": "drag-1"}))

        frames_since_on = None
        arc_seen = None
        for frame in recv_frames(ws):
            if frames_since_on is None:
                if frame["last_event"] == "entangle_on: (0, 1)":
                    frames_since_on = 0
                else:
                    continue
            else:
                frames_since_on += 1
            if frame["pairs"][0]["active"]:
                arc_seen = frames_since_on
                break
            assert frames_since_on <= 3, "arc did not appear within 3 frames"
        assert arc_seen is not None and arc_seen <= 3

        # let it entangle visibly, then inspect via freeze + measure
        for frame in recv_frames(ws):
            if frame["pairs"][0]["s_tilde"] > 0.1:
                break
        ws.send(json.dumps({"type": "freeze"}))
        ws.send(json.dumps({"type": "measure", "id": 0, "tag": "m-1"}))

        frames_since_measure = None
        for frame in recv_frames(ws):
            if frames_since_measure is None:
                if frame["last_event"] == "measurement: qubit 0 -> 0" \
                        or frame["last_event"] == "measurement: qubit 0 -> 1":
                    frames_since_measure = 0
                else:
                    continue
            else:
                frames_since_measure += 1
            if not frame["pairs"][0]["active"] and frame["pairs"][0]["s_tilde"] <= 1e-9:
                break
            assert frames_since_measure <= 3, "arc did not clear within 3 frames"
        for q in frame["qubits"]:
            assert abs(q["radius"] - 1.0) <= 1e-6

        # bad reference comes back as a tagged error, connection survives
        ws.send(json.dumps({"type": "measure", "id": 9, "tag": "bad-9"}))
        deadline = time.monotonic() + 5
        while time.monotonic() < deadline:
            msg = json.loads(ws.recv(timeout=5))
            if msg.get("type") == "error":
                assert msg["tag"] == "bad-9"
                break
        else:
            pytest.fail("no error reply")


def test_p0_trace_oscillates_during_exchange(live_server):
    # the strip chart's input: p0 over frames while the pair exchanges
    with connect(f"ws://{live_server}/ws") as ws:
        ws.recv(timeout=5)  # hello
        ws.send(json.dumps({"type": "move", "id": 1, "position": [0.0, 0.0, 0.0]}))
        trace = []
        start = time.monotonic()
        for frame in recv_frames(ws, timeout=12.0):
            trace.append(frame["qubits"][0]["p0"])
            if time.monotonic() - start > 7.0:
                break
        swing = max(trace) - min(trace)
        assert swing > 0.8, f"p0 swing only {swing:.3f}"
        assert min(trace) < 0.2 and max(trace) > 0.8
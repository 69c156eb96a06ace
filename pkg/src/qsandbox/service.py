"""Live service: one engine thread owns the scene, the network layer talks
to it through two queues (commands in, encoded frames out).

Clients connect over a websocket at /ws, receive a hello message, then a
stream of frame messages at the configured broadcast rate. Inbound command
messages apply in arrival order; scene-level rejections come back as error
messages carrying the request tag. A payload that cannot be decoded is a
protocol violation: the client gets one error message and is disconnected.
The scene itself is never touched by a client handler.
"""
from __future__ import annotations

import asyncio
import json
import queue
import threading
import time
from contextlib import asynccontextmanager
from pathlib import Path

from fastapi import FastAPI, WebSocket, WebSocketDisconnect

from .config import Config
from .errors import EngineHalt, WireError
from .scene import Scene
from .states import MAX_QUBITS, BlochAngles
from .wire import (
    PROTOCOL_VERSION,
    decode_command,
    encode_frame,
    error_message,
    frame_from_scene,
    hello_message,
)

DEFAULT_SPAWN = (
    (BlochAngles(0.0, 0.0), (-4.0, 0.0, 0.0)),
    (BlochAngles(0.0, 0.0), (4.0, 0.0, 0.0)),
)

# Wall-clock stalls beyond this are swallowed instead of replayed as a
# burst of catch-up ticks.
_MAX_BACKLOG = 0.25


class EngineRunner:
    """Owns the scene on a dedicated thread; everything else goes through
    submit() and latest_frame()."""

    def __init__(self, scene: Scene):
        self.scene = scene
        self.commands: queue.Queue = queue.Queue()
        self._frame_lock = threading.Lock()
        self._frame_text = encode_frame(frame_from_scene(scene))
        self._stop = threading.Event()
        self.halted: str | None = None
        self._thread = threading.Thread(target=self._run, name="qsandbox-engine",
                                        daemon=True)

    def start(self):
        self._thread.start()

    def stop(self):
        self._stop.set()
        self._thread.join(timeout=5.0)

    def submit(self, cmd, reply=None):
        """Queue a command; `reply(reason)` fires if the scene rejects it."""
        self.commands.put((cmd, reply))

    def latest_frame(self) -> str:
        with self._frame_lock:
            return self._frame_text

    def _publish(self):
        text = encode_frame(frame_from_scene(self.scene))
        with self._frame_lock:
            self._frame_text = text

    def _drain_commands(self):
        while True:
            try:
                cmd, reply = self.commands.get_nowait()
            except queue.Empty:
                return
            event = self.scene.apply(cmd)
            if reply is not None and event.payload.get("rejected"):
                reply(event.payload.get("reason", "rejected"))

    def _run(self):
        dt = self.scene.dt
        last = time.perf_counter()
        backlog = 0.0
        while not self._stop.is_set():
            self._drain_commands()
            now = time.perf_counter()
            backlog = min(backlog + (now - last), _MAX_BACKLOG)
            last = now
            try:
                while backlog >= dt:
                    self.scene.tick()
                    backlog -= dt
            except EngineHalt as halt:
                self.halted = str(halt)
                self._publish()
                return
            self._publish()
            self._stop.wait(min(dt, max(dt - backlog, 0.0005)))


def create_app(config: Config | None = None, spawn=None,
               static_dir: str | None = None) -> FastAPI:
    """Build the service app. `spawn` overrides the default two-qubit scene;
    `static_dir` (or ./frontend/dist if present) is served at /."""
    config = config or Config()
    spawn = spawn or DEFAULT_SPAWN

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        scene = Scene(spawn, config.coupling, config.dt, config.seed)
        runner = EngineRunner(scene)
        runner.start()
        app.state.runner = runner
        app.state.clients = set()

        async def broadcast():
            interval = 1.0 / config.frame_rate
            while True:
                await asyncio.sleep(interval)
                if runner.halted is not None:
                    text = error_message(runner.halted)
                else:
                    text = runner.latest_frame()
                for outbox in list(app.state.clients):
                    try:
                        outbox.put_nowait(text)
                    except asyncio.QueueFull:
                        pass  # slow client keeps only fresh frames
                if runner.halted is not None:
                    return

        task = asyncio.create_task(broadcast())
        try:
            yield
        finally:
            task.cancel()
            runner.stop()

    app = FastAPI(lifespan=lifespan)

    @app.get("/config")
    def config_endpoint():
        return {"protocol": PROTOCOL_VERSION, "ws_path": "/ws",
                "max_qubits": MAX_QUBITS, "frame_rate": config.frame_rate,
                "j_max": config.j_max, "theta_d": config.theta_d,
                "dt": config.dt}

    @app.websocket("/ws")
    async def websocket_endpoint(sock: WebSocket):
        await sock.accept()
        outbox: asyncio.Queue = asyncio.Queue(maxsize=64)
        loop = asyncio.get_running_loop()
        runner: EngineRunner = sock.app.state.runner
        clients: set = sock.app.state.clients
        await sock.send_text(hello_message())
        clients.add(outbox)

        async def pump():
            while True:
                await sock.send_text(await outbox.get())

        sender = asyncio.create_task(pump())
        try:
            while True:
                text = await sock.receive_text()
                tag = _best_effort_tag(text)
                try:
                    cmd, tag = decode_command(text)
                except WireError as err:
                    # protocol violation: report and drop this client
                    await sock.send_text(error_message(str(err), tag))
                    await sock.close(code=1002)
                    break

                def reply(reason, _tag=tag):
                    loop.call_soon_threadsafe(_offer, outbox, error_message(reason, _tag))

                runner.submit(cmd, reply)
        except WebSocketDisconnect:
            pass
        finally:
            clients.discard(outbox)
            sender.cancel()

    static = Path(static_dir) if static_dir else Path("frontend/dist")
    if static.is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=str(static), html=True), name="ui")

    return app


def _offer(outbox: asyncio.Queue, text: str):
    try:
        outbox.put_nowait(text)
    except asyncio.QueueFull:
        pass


def _best_effort_tag(text: str):
    try:
        obj = json.loads(text)
    except (json.JSONDecodeError, ValueError):
        return None
    return obj.get("tag") if isinstance(obj, dict) else None


def serve(config: Config, spawn=None, static_dir: str | None = None):
    """Run the service until interrupted."""
    import uvicorn

    app = create_app(config, spawn=spawn, static_dir=static_dir)
    uvicorn.run(app, host=config.host, port=config.port, log_level="info")

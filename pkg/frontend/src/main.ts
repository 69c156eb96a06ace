// Cockpit bootstrap: DOM wiring, websocket, render loop.
import { drawChart } from "./chart.js";
import { CommandThrottle, DragController, type SceneLayout } from "./input.js";
import { resolveServerUrl, SocketClient } from "./net.js";
import { SceneView } from "./render.js";
import type { Command, GateName } from "./types.js";
import { ViewModel } from "./viewmodel.js";

const MOVE_INTERVAL_MS = 1000 / 30;

function byId<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (!el) {
    throw new Error(`missing element #${id}`);
  }
  return el as T;
}

function main(): void {
  const sceneCanvas = byId<HTMLCanvasElement>("scene");
  const chartCanvas = byId<HTMLCanvasElement>("chart");
  const statusEl = byId<HTMLSpanElement>("status");
  const toastEl = byId<HTMLDivElement>("toast");
  const freezeButton = byId<HTMLButtonElement>("freeze-button");

  const vm = new ViewModel();
  const view = new SceneView(sceneCanvas.width, sceneCanvas.height);
  const sceneCtx = sceneCanvas.getContext("2d")!;
  const chartCtx = chartCanvas.getContext("2d")!;

  const url = resolveServerUrl(window.location.search, window.location.host);
  const socket = new SocketClient(url, {
    message(msg) {
      if (msg.kind === "frame") {
        vm.acceptFrame(msg.frame);
      } else if (msg.kind === "hello") {
        vm.statusDetail = `protocol ${msg.hello.protocol}, `
          + `up to ${msg.hello.max_qubits} qubits`;
      } else {
        const toast = vm.handleError(msg.error);
        toastEl.textContent = toast.commandType
          ? `${toast.commandType} rejected: ${toast.message}`
          : toast.message;
        toastEl.classList.add("visible");
        setTimeout(() => toastEl.classList.remove("visible"), 4000);
      }
    },
    statusChanged(connected, detail) {
      vm.status = connected ? "connected" : "closed";
      vm.statusDetail = detail;
    },
    decodeFailed(detail) {
      // keep rendering the last good frame
      vm.statusDetail = `decode error: ${detail}`;
    },
  });
  socket.connect();

  // the coupling cutoff for range rings comes from the config endpoint
  fetch("/config")
    .then((r) => r.json())
    .then((cfg) => {
      if (typeof cfg.theta_d === "number") {
        view.thetaD = cfg.theta_d;
      }
    })
    .catch(() => undefined);

  function sendCommand(cmd: Command): void {
    const tag = socket.send(cmd);
    if (tag) {
      vm.trackCommand(tag, cmd.type);
    }
  }

  const throttle = new CommandThrottle(MOVE_INTERVAL_MS, sendCommand);

  // the drag controller works in client coordinates; the layout converts
  const layout: SceneLayout = {
    qubitAt: (px, py) => {
      const rect = sceneCanvas.getBoundingClientRect();
      return view.qubitAt(vm, px - rect.left, py - rect.top);
    },
    gateAt: (px, py) => {
      const el = document.elementFromPoint(px, py) as HTMLElement | null;
      const gate = el?.closest<HTMLElement>("[data-gate]")?.dataset.gate;
      return (gate as GateName | undefined) ?? null;
    },
    toWorld: (px, py) => {
      const rect = sceneCanvas.getBoundingClientRect();
      const dragged = vm.latest?.qubits.find((q) => q.id === vm.dragging?.id);
      const z = dragged ? dragged.position[2] : 0;
      return view.screenToWorld(px - rect.left, py - rect.top, z);
    },
    otherQubit: (id) => {
      const frame = vm.latest;
      if (!frame) {
        return null;
      }
      const self = frame.qubits.find((q) => q.id === id);
      let best: number | null = null;
      let bestDist = Infinity;
      for (const q of frame.qubits) {
        if (q.id === id || !self) {
          continue;
        }
        const dist = Math.hypot(
          q.position[0] - self.position[0],
          q.position[1] - self.position[1],
          q.position[2] - self.position[2],
        );
        if (dist < bestDist) {
          best = q.id;
          bestDist = dist;
        }
      }
      return best;
    },
  };

  const drag = new DragController(layout, sendCommand, throttle, {
    selected: (id) => {
      vm.selected = id;
    },
    dragStarted: (id) => {
      vm.dragging = { id };
    },
    dragEnded: () => {
      vm.dragging = null;
    },
  });

  // pointer events arrive in client coordinates; the scene hit tests in
  // canvas-local ones, gate tiles in client ones
  sceneCanvas.addEventListener("pointerdown", (e) => {
    drag.pointerDown(e.clientX, e.clientY);
  });
  window.addEventListener("pointermove", (e) => {
    if (drag.draggingId !== null) {
      drag.pointerMove(e.clientX, e.clientY);
    }
  });
  window.addEventListener("pointerup", (e) => {
    drag.pointerUp(e.clientX, e.clientY);
  });
  window.addEventListener("blur", () => drag.cancel());

  byId<HTMLButtonElement>("measure-button").addEventListener("click", () => {
    if (vm.selected !== null) {
      sendCommand({ type: "measure", id: vm.selected });
    } else {
      toastEl.textContent = "select a qubit first";
      toastEl.classList.add("visible");
      setTimeout(() => toastEl.classList.remove("visible"), 2000);
    }
  });
  freezeButton.addEventListener("click", () => {
    sendCommand({ type: vm.latest?.frozen ? "unfreeze" : "freeze" });
  });
  byId<HTMLButtonElement>("reset-button").addEventListener("click", () => {
    sendCommand({ type: "reset" });
  });
  byId<HTMLButtonElement>("add-button").addEventListener("click", () => {
    sendCommand({
      type: "add",
      theta: Math.PI / 2,
      phi: 0,
      position: [0, -4, 0],
    });
  });

  function frame(): void {
    view.draw(sceneCtx, vm);
    drawChart(chartCtx, vm.history, chartCanvas.width, chartCanvas.height);
    statusEl.textContent = `${vm.status}${vm.statusDetail ? " - " + vm.statusDetail : ""}`;
    statusEl.className = vm.status === "connected" ? "ok" : "bad";
    freezeButton.textContent = vm.latest?.frozen ? "unfreeze" : "freeze";
    requestAnimationFrame(frame);
  }
  requestAnimationFrame(frame);
}

window.addEventListener("load", main);

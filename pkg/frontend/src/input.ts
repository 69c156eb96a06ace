// Pointer handling: drag-to-move with a bounded command rate, gate-tile
// drops, and selection. Pure logic; the DOM bindings live in main.ts.
import type { Command, GateName } from "./types.js";

export interface SceneLayout {
  qubitAt(px: number, py: number): number | null;
  gateAt(px: number, py: number): GateName | null;
  toWorld(px: number, py: number): [number, number, number];
  /** Partner for two-qubit gates: the nearest other qubit, if any. */
  otherQubit(id: number): number | null;
}

/**
 * Trailing-edge rate limiter for move commands: at most one send per
 * interval, always ending with the newest position.
 */
export class CommandThrottle {
  private lastSent = -Infinity;
  private queued: Command | null = null;
  private timer: ReturnType<typeof setTimeout> | null = null;

  constructor(
    private readonly intervalMs: number,
    private readonly send: (cmd: Command) => void,
    private readonly now: () => number = () => Date.now(),
    private readonly defer: (fn: () => void, ms: number) => ReturnType<typeof setTimeout>
      = (fn, ms) => setTimeout(fn, ms),
    private readonly cancel: (t: ReturnType<typeof setTimeout>) => void
      = (t) => clearTimeout(t),
  ) {}

  offer(cmd: Command): void {
    const wait = this.lastSent + this.intervalMs - this.now();
    if (wait <= 0) {
      this.emit(cmd);
      return;
    }
    this.queued = cmd;
    if (this.timer === null) {
      this.timer = this.defer(() => {
        this.timer = null;
        if (this.queued) {
          const cmd2 = this.queued;
          this.queued = null;
          this.emit(cmd2);
        }
      }, wait);
    }
  }

  /** Drop anything still queued (e.g. the drag ended with a gate drop). */
  discardQueued(): void {
    this.queued = null;
    if (this.timer !== null) {
      this.cancel(this.timer);
      this.timer = null;
    }
  }

  /** Send the queued command immediately, if any. */
  flush(): void {
    if (this.queued) {
      const cmd = this.queued;
      this.discardQueued();
      this.emit(cmd);
    }
  }

  private emit(cmd: Command): void {
    this.lastSent = this.now();
    this.send(cmd);
  }
}

export interface DragEvents {
  selected(id: number | null): void;
  dragStarted(id: number): void;
  dragEnded(): void;
}

export class DragController {
  private dragId: number | null = null;
  private moved = false;

  constructor(
    private readonly layout: SceneLayout,
    private readonly emit: (cmd: Command) => void,
    private readonly throttle: CommandThrottle,
    private readonly events: DragEvents,
  ) {}

  get draggingId(): number | null {
    return this.dragId;
  }

  pointerDown(px: number, py: number): void {
    const id = this.layout.qubitAt(px, py);
    this.events.selected(id);
    if (id !== null) {
      this.dragId = id;
      this.moved = false;
      this.events.dragStarted(id);
    }
  }

  pointerMove(px: number, py: number): void {
    if (this.dragId === null) {
      return;
    }
    this.moved = true;
    this.throttle.offer({
      type: "move",
      id: this.dragId,
      position: this.layout.toWorld(px, py),
    });
  }

  pointerUp(px: number, py: number): void {
    if (this.dragId === null) {
      return;
    }
    const id = this.dragId;
    this.dragId = null;
    const gate = this.layout.gateAt(px, py);
    if (gate !== null) {
      // the drop is a gate application, not a move
      this.throttle.discardQueued();
      if (gate === "CNOT") {
        const target = this.layout.otherQubit(id);
        if (target !== null) {
          this.emit({ type: "gate", name: gate, targets: [id, target] });
        }
      } else {
        this.emit({ type: "gate", name: gate, targets: [id] });
      }
    } else if (this.moved) {
      // land exactly where the pointer let go
      this.throttle.discardQueued();
      this.emit({ type: "move", id, position: this.layout.toWorld(px, py) });
    }
    this.events.dragEnded();
  }

  cancel(): void {
    if (this.dragId !== null) {
      this.dragId = null;
      this.throttle.discardQueued();
      this.events.dragEnded();
    }
  }
}

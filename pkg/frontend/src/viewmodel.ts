// Client-side state: latest frame, connection status, drag bookkeeping,
// pending command tags and the chart history. The UI never integrates any
// physics locally; every displayed number originates from a frame.
import { FrameHistory } from "./chart.js";
import type { Frame, FramePair, ServerError } from "./types.js";
import { MAX_PAIR_ENTANGLEMENT } from "./types.js";

export type ConnectionStatus = "connecting" | "connected" | "closed";

// sim_time jumping backwards by more than this means the scene was reset;
// anything smaller that still goes backwards is a stale frame.
const RESET_JUMP_SECONDS = 0.5;

export interface ArcView {
  i: number;
  j: number;
  intensity: number; // 0..1, S~_ij / (2 ln 2)
}

export interface Toast {
  message: string;
  commandType: string | null;
}

export class ViewModel {
  latest: Frame | null = null;
  status: ConnectionStatus = "connecting";
  statusDetail = "";
  dragging: { id: number } | null = null;
  selected: number | null = null;
  staleDropped = 0;
  readonly history = new FrameHistory(30);
  readonly toasts: Toast[] = [];
  private pendingTags = new Map<string, string>();

  /** Returns false when the frame is stale and was discarded. */
  acceptFrame(frame: Frame): boolean {
    if (this.latest) {
      const dt = frame.sim_time - this.latest.sim_time;
      if (dt < -RESET_JUMP_SECONDS) {
        this.history.clear(); // scene reset: restart the strip chart
      } else if (dt < 0) {
        this.staleDropped += 1;
        return false;
      }
    }
    this.latest = frame;
    this.history.push(frame);
    if (this.selected !== null
        && !frame.qubits.some((q) => q.id === this.selected)) {
      this.selected = null;
    }
    return true;
  }

  trackCommand(tag: string, commandType: string): void {
    this.pendingTags.set(tag, commandType);
  }

  /** Resolve a server error against its originating command, if tagged. */
  handleError(error: ServerError): Toast {
    let commandType: string | null = null;
    if (error.tag && this.pendingTags.has(error.tag)) {
      commandType = this.pendingTags.get(error.tag) ?? null;
      this.pendingTags.delete(error.tag);
    }
    const toast = { message: error.message, commandType };
    this.toasts.push(toast);
    if (this.toasts.length > 5) {
      this.toasts.shift();
    }
    return toast;
  }

  /** Arcs to draw: one per active pair, intensity normalized to [0, 1]. */
  arcs(): ArcView[] {
    if (!this.latest) {
      return [];
    }
    return this.latest.pairs
      .filter((p) => p.active)
      .map((p) => ({
        i: p.i,
        j: p.j,
        intensity: Math.min(p.s_tilde / MAX_PAIR_ENTANGLEMENT, 1),
      }));
  }

  /** 0..1 blend from the unentangled hue toward the entangled hue. */
  haloBlend(qubitId: number): number {
    if (!this.latest) {
      return 0;
    }
    let blend = 0;
    for (const pair of this.latest.pairs) {
      if (pair.i !== qubitId && pair.j !== qubitId) {
        continue;
      }
      blend = Math.max(blend, pair.active ? 1 : pair.overlap * 0.6);
    }
    return blend;
  }

  pairBetween(a: number, b: number): FramePair | null {
    if (!this.latest) {
      return null;
    }
    const [i, j] = a < b ? [a, b] : [b, a];
    return this.latest.pairs.find((p) => p.i === i && p.j === j) ?? null;
  }
}

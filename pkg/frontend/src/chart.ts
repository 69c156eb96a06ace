// Rolling p0-vs-time buffer and the strip-chart painter.
import type { Frame } from "./types.js";

export interface ChartSample {
  t: number;
  p0: (number | null)[]; // indexed by qubit id; null until the qubit exists
}

export class FrameHistory {
  samples: ChartSample[] = [];

  constructor(readonly windowSeconds: number = 30) {}

  push(frame: Frame): void {
    const p0: (number | null)[] = [];
    for (const q of frame.qubits) {
      p0[q.id] = q.p0;
    }
    const prev = this.samples[this.samples.length - 1];
    if (prev && frame.sim_time === prev.t) {
      return; // frozen scene: one sample per instant is enough
    }
    this.samples.push({ t: frame.sim_time, p0 });
    const cutoff = frame.sim_time - this.windowSeconds;
    let start = 0;
    while (start < this.samples.length && this.samples[start].t < cutoff) {
      start += 1;
    }
    if (start > 0) {
      this.samples = this.samples.slice(start);
    }
  }

  clear(): void {
    this.samples = [];
  }

  get span(): [number, number] | null {
    if (this.samples.length < 2) {
      return null;
    }
    return [this.samples[0].t, this.samples[this.samples.length - 1].t];
  }

  series(id: number): [number, number][] {
    const out: [number, number][] = [];
    for (const sample of this.samples) {
      const value = sample.p0[id];
      if (value !== null && value !== undefined) {
        out.push([sample.t, value]);
      }
    }
    return out;
  }

  qubitIds(): number[] {
    const ids = new Set<number>();
    for (const sample of this.samples) {
      sample.p0.forEach((value, id) => {
        if (value !== null && value !== undefined) {
          ids.add(id);
        }
      });
    }
    return [...ids].sort((a, b) => a - b);
  }
}

export const SERIES_COLORS = ["#6cc6ff", "#ffb454", "#7dea9c"];

export function drawChart(
  ctx: CanvasRenderingContext2D,
  history: FrameHistory,
  width: number,
  height: number,
): void {
  ctx.clearRect(0, 0, width, height);
  ctx.fillStyle = "#10141c";
  ctx.fillRect(0, 0, width, height);
  ctx.strokeStyle = "#2a3246";
  ctx.beginPath();
  for (const frac of [0, 0.5, 1]) {
    const y = 4 + (height - 8) * (1 - frac);
    ctx.moveTo(0, y);
    ctx.lineTo(width, y);
  }
  ctx.stroke();

  const span = history.span;
  if (!span) {
    return;
  }
  const [t0, t1] = span;
  const scaleX = width / Math.max(t1 - t0, 1e-9);
  const toY = (p: number) => 4 + (height - 8) * (1 - p);

  for (const id of history.qubitIds()) {
    ctx.strokeStyle = SERIES_COLORS[id % SERIES_COLORS.length];
    ctx.lineWidth = 1.5;
    ctx.beginPath();
    let started = false;
    for (const [t, p] of history.series(id)) {
      const x = (t - t0) * scaleX;
      if (started) {
        ctx.lineTo(x, toY(p));
      } else {
        ctx.moveTo(x, toY(p));
        started = true;
      }
    }
    ctx.stroke();
  }
}

// Canvas plan view: qubits as Bloch glyphs on the x-y plane, coupling-range
// rings, entanglement arcs, freeze badge. Pure drawing; no physics.
import type { ViewModel } from "./viewmodel.js";
import type { FrameQubit } from "./types.js";

const UNENTANGLED_HUE = { r: 255, g: 126, b: 184 }; // pink
const ENTANGLED_HUE = { r: 148, g: 82, b: 236 };    // purple

function blendHue(t: number): string {
  const r = Math.round(UNENTANGLED_HUE.r + (ENTANGLED_HUE.r - UNENTANGLED_HUE.r) * t);
  const g = Math.round(UNENTANGLED_HUE.g + (ENTANGLED_HUE.g - UNENTANGLED_HUE.g) * t);
  const b = Math.round(UNENTANGLED_HUE.b + (ENTANGLED_HUE.b - UNENTANGLED_HUE.b) * t);
  return `rgb(${r},${g},${b})`;
}

export class SceneView {
  scale = 36; // pixels per scene unit
  thetaD = 5; // coupling cutoff; refreshed from /config

  constructor(
    public width: number,
    public height: number,
  ) {}

  worldToScreen(x: number, y: number): [number, number] {
    return [this.width / 2 + x * this.scale, this.height / 2 - y * this.scale];
  }

  screenToWorld(px: number, py: number, z: number): [number, number, number] {
    return [
      (px - this.width / 2) / this.scale,
      (this.height / 2 - py) / this.scale,
      z,
    ];
  }

  glyphRadius(q: FrameQubit): number {
    return 5 + 22 * Math.max(Math.min(q.radius, 1), 0);
  }

  qubitAt(vm: ViewModel, px: number, py: number): number | null {
    if (!vm.latest) {
      return null;
    }
    let best: number | null = null;
    let bestDist = Infinity;
    for (const q of vm.latest.qubits) {
      const [sx, sy] = this.worldToScreen(q.position[0], q.position[1]);
      const dist = Math.hypot(px - sx, py - sy);
      if (dist <= this.glyphRadius(q) + 12 && dist < bestDist) {
        best = q.id;
        bestDist = dist;
      }
    }
    return best;
  }

  draw(ctx: CanvasRenderingContext2D, vm: ViewModel): void {
    const { width, height } = this;
    ctx.clearRect(0, 0, width, height);
    ctx.fillStyle = "#0b0e14";
    ctx.fillRect(0, 0, width, height);
    this.drawGrid(ctx);

    const frame = vm.latest;
    if (!frame) {
      ctx.fillStyle = "#8892a8";
      ctx.font = "14px sans-serif";
      ctx.fillText("waiting for frames...", 20, 30);
      return;
    }

    const centers = new Map<number, [number, number]>();
    for (const q of frame.qubits) {
      centers.set(q.id, this.worldToScreen(q.position[0], q.position[1]));
    }

    // coupling-range rings
    ctx.strokeStyle = "rgba(110, 130, 180, 0.25)";
    ctx.setLineDash([6, 6]);
    for (const q of frame.qubits) {
      const [sx, sy] = centers.get(q.id)!;
      ctx.beginPath();
      ctx.arc(sx, sy, this.thetaD * this.scale, 0, Math.PI * 2);
      ctx.stroke();
    }
    ctx.setLineDash([]);

    // entanglement arcs under the glyphs
    for (const arc of vm.arcs()) {
      const a = centers.get(arc.i);
      const b = centers.get(arc.j);
      if (!a || !b) {
        continue;
      }
      this.drawArc(ctx, a, b, arc.intensity, frame.sim_time);
    }

    for (const q of frame.qubits) {
      this.drawQubit(ctx, q, centers.get(q.id)!, vm);
    }

    if (frame.frozen) {
      ctx.fillStyle = "rgba(90, 160, 255, 0.92)";
      ctx.fillRect(12, 12, 96, 26);
      ctx.fillStyle = "#0b0e14";
      ctx.font = "bold 13px sans-serif";
      ctx.fillText("|| FROZEN", 24, 30);
    }

    if (frame.last_event) {
      ctx.fillStyle = "#68738c";
      ctx.font = "12px monospace";
      ctx.fillText(frame.last_event, 12, height - 12);
    }
  }

  private drawGrid(ctx: CanvasRenderingContext2D): void {
    ctx.strokeStyle = "#151b28";
    ctx.beginPath();
    const step = this.scale;
    for (let x = (this.width / 2) % step; x < this.width; x += step) {
      ctx.moveTo(x, 0);
      ctx.lineTo(x, this.height);
    }
    for (let y = (this.height / 2) % step; y < this.height; y += step) {
      ctx.moveTo(0, y);
      ctx.lineTo(this.width, y);
    }
    ctx.stroke();
  }

  private drawArc(
    ctx: CanvasRenderingContext2D,
    a: [number, number],
    b: [number, number],
    intensity: number,
    simTime: number,
  ): void {
    const mx = (a[0] + b[0]) / 2;
    const my = (a[1] + b[1]) / 2;
    const len = Math.hypot(b[0] - a[0], b[1] - a[1]) || 1;
    const nx = -(b[1] - a[1]) / len;
    const ny = (b[0] - a[0]) / len;
    // livelier wobble for stronger entanglement
    for (let strand = 0; strand < 3; strand += 1) {
      const phase = simTime * (4 + 3 * strand) + strand * 2.1;
      const bulge = (14 + 26 * intensity) * Math.sin(phase) * (1 - strand * 0.3);
      ctx.strokeStyle = strand === 1
        ? `rgba(255, 150, 230, ${0.12 + 0.5 * intensity})`
        : `rgba(160, 110, 255, ${0.15 + 0.7 * intensity})`;
      ctx.lineWidth = 1 + 4 * intensity;
      ctx.beginPath();
      ctx.moveTo(a[0], a[1]);
      ctx.quadraticCurveTo(mx + nx * bulge, my + ny * bulge, b[0], b[1]);
      ctx.stroke();
    }
  }

  private drawQubit(
    ctx: CanvasRenderingContext2D,
    q: FrameQubit,
    center: [number, number],
    vm: ViewModel,
  ): void {
    const [sx, sy] = center;
    const radius = this.glyphRadius(q);
    const halo = blendHue(vm.haloBlend(q.id));

    ctx.beginPath();
    ctx.arc(sx, sy, radius + 7, 0, Math.PI * 2);
    ctx.fillStyle = halo.replace("rgb", "rgba").replace(")", ",0.25)");
    ctx.fill();

    ctx.beginPath();
    ctx.arc(sx, sy, radius, 0, Math.PI * 2);
    ctx.fillStyle = "#1d2536";
    ctx.fill();
    ctx.lineWidth = vm.selected === q.id ? 3 : 1.5;
    ctx.strokeStyle = vm.selected === q.id ? "#ffffff" : halo;
    ctx.stroke();

    // Bloch arrow in oblique projection: +u right, +w up, +v receding
    const len = radius + 9;
    const dx = q.u - 0.28 * q.v;
    const dy = -q.w + 0.28 * q.v;
    const tipX = sx + dx * len;
    const tipY = sy + dy * len;
    ctx.strokeStyle = "#e8edf7";
    ctx.lineWidth = 2;
    ctx.beginPath();
    ctx.moveTo(sx, sy);
    ctx.lineTo(tipX, tipY);
    ctx.stroke();
    ctx.beginPath();
    ctx.arc(tipX, tipY, 2.5, 0, Math.PI * 2);
    ctx.fillStyle = "#e8edf7";
    ctx.fill();

    ctx.fillStyle = "#aab4cc";
    ctx.font = "11px monospace";
    ctx.fillText(`q${q.id}  p0=${q.p0.toFixed(2)}`, sx - radius, sy + radius + 16);
  }
}

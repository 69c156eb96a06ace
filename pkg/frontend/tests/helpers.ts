// Frame builders mirroring the server's JSON shapes.
import type { Frame, FramePair, FrameQubit } from "../src/types.js";

export function qubit(partial: Partial<FrameQubit> & { id: number }): FrameQubit {
  return {
    position: [0, 0, 0],
    u: 0,
    v: 0,
    w: 1,
    radius: 1,
    entropy: 0,
    p0: 1,
    ...partial,
  };
}

export function pair(partial: Partial<FramePair> = {}): FramePair {
  return {
    i: 0,
    j: 1,
    delta_r: 1,
    j_strength: 0.95,
    s_tilde: 0,
    overlap: 0.7,
    active: false,
    ...partial,
  };
}

export function frame(partial: Partial<Frame> = {}): Frame {
  return {
    sim_time: 0,
    frozen: false,
    qubits: [qubit({ id: 0 }), qubit({ id: 1, position: [1, 0, 0] })],
    pairs: [pair()],
    last_event: null,
    ...partial,
  };
}

/**
 * Frame sequence imitating the live service around an entangle/measure
 * episode: the pair goes geometrically active at `onAt`, entanglement
 * builds each broadcast frame, a measurement at `measureAt` zeroes it.
 */
export function exchangeEpisode(frames: number, onAt: number,
                                measureAt: number | null): Frame[] {
  const out: Frame[] = [];
  let sTilde = 0;
  for (let k = 0; k < frames; k += 1) {
    const inside = k >= onAt;
    if (measureAt !== null && k === measureAt) {
      sTilde = 0; // collapse
    } else if (inside) {
      sTilde = Math.min(sTilde + 0.002 * (k - onAt + 1), 2 * Math.log(2));
    }
    const p0 = measureAt !== null && k >= measureAt
      ? 1
      : 0.5 - 0.5 * Math.cos(k / 6);
    out.push(frame({
      sim_time: k / 60,
      qubits: [
        qubit({ id: 0, p0, radius: inside ? 1 - sTilde / 2 : 1 }),
        qubit({ id: 1, position: [1, 0, 0], p0: 1 - p0 }),
      ],
      pairs: [pair({
        delta_r: inside ? 1 : 8,
        j_strength: inside ? 0.95 : 0,
        active: inside && sTilde > 1e-6,
        s_tilde: sTilde,
        overlap: inside ? 0.7 : 0,
      })],
    }));
  }
  return out;
}

// Wire types shared with the simulation service. Field names mirror the
// server's JSON; unknown fields arriving from the server are ignored.

export interface FrameQubit {
  id: number;
  position: [number, number, number];
  u: number;
  v: number;
  w: number;
  radius: number;
  entropy: number;
  p0: number;
}

export interface FramePair {
  i: number;
  j: number;
  delta_r: number;
  j_strength: number;
  s_tilde: number;
  overlap: number;
  active: boolean;
}

export interface Frame {
  sim_time: number;
  frozen: boolean;
  qubits: FrameQubit[];
  pairs: FramePair[];
  last_event: string | null;
}

export interface Hello {
  protocol: number;
  max_qubits: number;
}

export interface ServerError {
  tag: string | null;
  message: string;
}

export type ServerMessage =
  | { kind: "hello"; hello: Hello }
  | { kind: "frame"; frame: Frame }
  | { kind: "error"; error: ServerError };

export type GateName = "I" | "X" | "Z" | "H" | "S" | "CNOT";

export type Command =
  | { type: "move"; id: number; position: [number, number, number] }
  | { type: "gate"; name: GateName; targets: number[] }
  | { type: "measure"; id: number }
  | { type: "freeze" }
  | { type: "unfreeze" }
  | { type: "reset"; seed?: number }
  | { type: "add"; theta: number; phi: number; position: [number, number, number] };

// S~_ij of a fully entangled pair; arcs normalize intensity against this.
export const MAX_PAIR_ENTANGLEMENT = 2 * Math.log(2);

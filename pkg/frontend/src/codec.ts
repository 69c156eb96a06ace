// Decode server messages and encode commands. Decoding is strict about the
// fields this client uses and silently ignores anything extra.
import type {
  Command,
  Frame,
  FramePair,
  FrameQubit,
  ServerMessage,
} from "./types.js";

export class CodecError extends Error {}

function num(obj: Record<string, unknown>, key: string, where: string): number {
  const value = obj[key];
  if (typeof value !== "number" || !Number.isFinite(value)) {
    throw new CodecError(`${where}: field ${key} is not a finite number`);
  }
  return value;
}

function triple(value: unknown, where: string): [number, number, number] {
  if (!Array.isArray(value) || value.length !== 3
      || !value.every((c) => typeof c === "number" && Number.isFinite(c))) {
    throw new CodecError(`${where}: expected 3 finite numbers`);
  }
  return [value[0], value[1], value[2]];
}

function asObject(value: unknown, where: string): Record<string, unknown> {
  if (typeof value !== "object" || value === null || Array.isArray(value)) {
    throw new CodecError(`${where}: expected an object`);
  }
  return value as Record<string, unknown>;
}

function decodeQubit(value: unknown): FrameQubit {
  const q = asObject(value, "frame.qubit");
  return {
    id: num(q, "id", "frame.qubit"),
    position: triple(q.position, "frame.qubit.position"),
    u: num(q, "u", "frame.qubit"),
    v: num(q, "v", "frame.qubit"),
    w: num(q, "w", "frame.qubit"),
    radius: num(q, "radius", "frame.qubit"),
    entropy: num(q, "entropy", "frame.qubit"),
    p0: num(q, "p0", "frame.qubit"),
  };
}

function decodePair(value: unknown): FramePair {
  const p = asObject(value, "frame.pair");
  if (typeof p.active !== "boolean") {
    throw new CodecError("frame.pair: active must be a boolean");
  }
  return {
    i: num(p, "i", "frame.pair"),
    j: num(p, "j", "frame.pair"),
    delta_r: num(p, "delta_r", "frame.pair"),
    j_strength: num(p, "j_strength", "frame.pair"),
    s_tilde: num(p, "s_tilde", "frame.pair"),
    overlap: num(p, "overlap", "frame.pair"),
    active: p.active,
  };
}

export function decodeFrame(obj: Record<string, unknown>): Frame {
  if (typeof obj.frozen !== "boolean") {
    throw new CodecError("frame: frozen must be a boolean");
  }
  if (!Array.isArray(obj.qubits) || !Array.isArray(obj.pairs)) {
    throw new CodecError("frame: qubits and pairs must be arrays");
  }
  return {
    sim_time: num(obj, "sim_time", "frame"),
    frozen: obj.frozen,
    qubits: obj.qubits.map(decodeQubit),
    pairs: obj.pairs.map(decodePair),
    last_event: typeof obj.last_event === "string" ? obj.last_event : null,
  };
}

export function decodeServerMessage(text: string): ServerMessage {
  let parsed: unknown;
  try {
    parsed = JSON.parse(text);
  } catch (err) {
    throw new CodecError(`invalid JSON from server: ${(err as Error).message}`);
  }
  const obj = asObject(parsed, "message");
  switch (obj.type) {
    case "frame":
      return { kind: "frame", frame: decodeFrame(obj) };
    case "hello":
      return {
        kind: "hello",
        hello: {
          protocol: num(obj, "protocol", "hello"),
          max_qubits: num(obj, "max_qubits", "hello"),
        },
      };
    case "error":
      return {
        kind: "error",
        error: {
          tag: typeof obj.tag === "string" ? obj.tag : null,
          message: typeof obj.message === "string" ? obj.message : "unknown error",
        },
      };
    default:
      throw new CodecError(`unknown server message type ${String(obj.type)}`);
  }
}

export function encodeCommand(cmd: Command, tag?: string): string {
  const payload: Record<string, unknown> = { ...cmd };
  if (tag !== undefined) {
    payload.tag = tag;
  }
  return JSON.stringify(payload);
}

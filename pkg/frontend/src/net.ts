// WebSocket client: decodes server messages, auto-assigns command tags,
// reconnects with a fixed backoff.
import { CodecError, decodeServerMessage, encodeCommand } from "./codec.js";
import type { Command, ServerMessage } from "./types.js";

export interface SocketHandlers {
  message(msg: ServerMessage): void;
  statusChanged(connected: boolean, detail: string): void;
  decodeFailed(detail: string): void;
}

const RECONNECT_MS = 2000;

export class SocketClient {
  private sock: WebSocket | null = null;
  private tagCounter = 0;
  private closed = false;

  constructor(
    private readonly url: string,
    private readonly handlers: SocketHandlers,
  ) {}

  connect(): void {
    this.closed = false;
    const sock = new WebSocket(this.url);
    this.sock = sock;
    sock.addEventListener("open", () => {
      this.handlers.statusChanged(true, this.url);
    });
    sock.addEventListener("message", (event) => {
      let msg: ServerMessage;
      try {
        msg = decodeServerMessage(String(event.data));
      } catch (err) {
        if (err instanceof CodecError) {
          // keep the last good frame; just surface the banner
          this.handlers.decodeFailed(err.message);
          return;
        }
        throw err;
      }
      this.handlers.message(msg);
    });
    sock.addEventListener("close", () => {
      this.handlers.statusChanged(false, "connection closed");
      this.sock = null;
      if (!this.closed) {
        setTimeout(() => this.connect(), RECONNECT_MS);
      }
    });
    sock.addEventListener("error", () => {
      this.handlers.statusChanged(false, "connection error");
    });
  }

  /** Send a command; returns the request tag, or null when disconnected. */
  send(cmd: Command): string | null {
    if (!this.sock || this.sock.readyState !== WebSocket.OPEN) {
      return null;
    }
    const tag = `t${++this.tagCounter}`;
    this.sock.send(encodeCommand(cmd, tag));
    return tag;
  }

  close(): void {
    this.closed = true;
    this.sock?.close();
  }
}

/** Resolve the websocket URL: ?server= override, else same-origin /ws. */
export function resolveServerUrl(search: string, host: string): string {
  const params = new URLSearchParams(search);
  const override = params.get("server");
  if (override) {
    return override.includes("://") ? override : `ws://${override}/ws`;
  }
  return `ws://${host}/ws`;
}

// WebSocket event stream with reconnect-and-resync.

import type { StreamMessage } from './types.js';

export interface SocketLike {
  onopen: (() => void) | null;
  onmessage: ((ev: { data: string }) => void) | null;
  onclose: (() => void) | null;
  close(): void;
}

export type SocketFactory = (url: string) => SocketLike;

export interface StreamHandlers {
  onMessage: (msg: StreamMessage) => void;
  onReconnect?: () => void;
}

const defaultFactory: SocketFactory = (url) => new WebSocket(url) as unknown as SocketLike;

export class Stream {
  private socket: SocketLike | null = null;
  private closed = false;
  sinceVersion = 0;

  constructor(
    private wsBase: string,
    private factory: SocketFactory = defaultFactory,
    private reconnectDelayMs = 500,
  ) {}

  connect(gameId: string, handlers: StreamHandlers): void {
    this.closed = false;
    const open = () => {
      if (this.closed) return;
      const socket = this.factory(`${this.wsBase}/games/${gameId}/stream?since=${this.sinceVersion}`);
      this.socket = socket;
      socket.onmessage = (ev) => {
        const msg = JSON.parse(ev.data) as StreamMessage;
        if (msg.type === 'event') this.sinceVersion = msg.version;
        if (msg.type === 'snapshot') this.sinceVersion = Math.max(this.sinceVersion, msg.session.version);
        handlers.onMessage(msg);
      };
      socket.onclose = () => {
        if (this.closed) return;
        handlers.onReconnect?.();
        setTimeout(open, this.reconnectDelayMs);
      };
    };
    open();
  }

  close(): void {
    this.closed = true;
    this.socket?.close();
  }
}

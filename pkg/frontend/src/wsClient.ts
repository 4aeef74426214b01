// Thin websocket wrapper for the viewer stream. The socket is injected so
// tests can drive frames without a network.

import type { EditRequest } from './types.js';

export interface ViewerSocket {
  send(data: string): void;
  close(): void;
  onopen: ((ev?: unknown) => void) | null;
  onmessage: ((ev: { data: string }) => void) | null;
  onclose: ((ev?: unknown) => void) | null;
}

export type SocketStatus = 'connecting' | 'open' | 'closed';

export class EventsClient {
  private socket: ViewerSocket | null = null;

  constructor(private readonly makeSocket: () => ViewerSocket) {}

  connect(
    onFrame: (data: string) => void,
    onStatus: (status: SocketStatus) => void = () => {},
  ): void {
    onStatus('connecting');
    const socket = this.makeSocket();
    socket.onopen = () => onStatus('open');
    socket.onmessage = (ev) => onFrame(ev.data);
    socket.onclose = () => {
      onStatus('closed');
      if (this.socket === socket) this.socket = null;
    };
    this.socket = socket;
  }

  /** Send an edit request; returns false when not connected. */
  sendEdit(edit: EditRequest): boolean {
    if (!this.socket) return false;
    this.socket.send(JSON.stringify(edit));
    return true;
  }

  close(): void {
    this.socket?.close();
    this.socket = null;
  }
}

export function eventsUrl(loc: { protocol: string; host: string }): string {
  const scheme = loc.protocol === 'https:' ? 'wss' : 'ws';
  return `${scheme}://${loc.host}/events`;
}

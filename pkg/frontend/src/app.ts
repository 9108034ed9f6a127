// Application wiring: one session, one stream, full redraw per change.
// The server is authoritative; inputs are disabled while a request is in
// flight and every board shown comes from a server snapshot or event.

import { Api, ApiError } from './api.js';
import { applyEvent, applySnapshot, emptyModel, ViewModel } from './model.js';
import { render } from './render.js';
import { Stream, SocketFactory } from './stream.js';
import type { StreamMessage } from './types.js';

export interface KeyBinding {
  axis: number;
  sign: number;
}

// Arrow mapping under row-major display: up decreases the row axis.
export const KEY_MOVES: Record<string, KeyBinding> = {
  ArrowUp: { axis: 0, sign: -1 },
  ArrowDown: { axis: 0, sign: 1 },
  ArrowLeft: { axis: 1, sign: -1 },
  ArrowRight: { axis: 1, sign: 1 },
  '[': { axis: 2, sign: -1 },
  ']': { axis: 2, sign: 1 },
};

export class App {
  vm: ViewModel = emptyModel();
  private gameId = '';
  private stream: Stream | null = null;
  private pendingPlace: number[] | null = null;

  constructor(
    private root: HTMLElement,
    private api: Api,
    private socketFactory?: SocketFactory,
    private wsBase = '',
  ) {}

  redraw(): void {
    render(this.vm, this.root);
    this.bindBoardClicks();
  }

  async join(gameId: string): Promise<void> {
    this.gameId = gameId;
    try {
      const session = await this.api.getGame(gameId);
      applySnapshot(this.vm, session);
      this.vm.snake = (await this.api.getSnake(gameId)).path;
    } catch (err) {
      this.vm.message = err instanceof ApiError ? `${err.code}: ${err.detail}` : String(err);
      this.redraw();
      return;
    }
    const stream = new Stream(this.wsBase, this.socketFactory);
    stream.sinceVersion = this.vm.version;
    stream.connect(gameId, {
      onMessage: (msg) => this.onStreamMessage(msg),
      onReconnect: () => {
        this.vm.message = 'connection lost, resyncing';
        this.redraw();
      },
    });
    this.stream = stream;
    this.redraw();
  }

  close(): void {
    this.stream?.close();
  }

  private onStreamMessage(msg: StreamMessage): void {
    if (msg.type === 'snapshot') {
      if (msg.session.version > this.vm.version) applySnapshot(this.vm, msg.session);
      this.vm.message = '';
    } else if (msg.type === 'event') {
      if (!applyEvent(this.vm, msg)) {
        void this.resync();
        return;
      }
    } else if (msg.type === 'over') {
      this.vm.over = true;
    } else if (msg.type === 'error') {
      this.vm.message = `${msg.error}: ${msg.detail}`;
    }
    this.redraw();
  }

  async resync(): Promise<void> {
    const session = await this.api.getGame(this.gameId);
    applySnapshot(this.vm, session);
    if (this.stream) this.stream.sinceVersion = session.version;
    this.redraw();
  }

  async submitMove(axis: number, sign: number): Promise<void> {
    if (this.vm.busy || this.vm.over || !this.vm.session) return;
    if (this.vm.session.human_role !== 'player') return;
    this.vm.busy = true;
    this.redraw();
    try {
      await this.api.postMove(this.gameId, { axis, sign });
      this.vm.message = '';
    } catch (err) {
      this.vm.message = err instanceof ApiError ? `${err.code}: ${err.detail}` : String(err);
    } finally {
      this.vm.busy = false;
      this.redraw();
    }
  }

  async submitPlace(pos: number[], exp: number): Promise<void> {
    if (this.vm.busy || this.vm.over || !this.vm.session) return;
    if (this.vm.session.human_role !== 'computer') return;
    this.vm.busy = true;
    this.redraw();
    try {
      await this.api.postPlace(this.gameId, { pos, exp });
      this.vm.message = '';
    } catch (err) {
      this.vm.message = err instanceof ApiError ? `${err.code}: ${err.detail}` : String(err);
    } finally {
      this.vm.busy = false;
      this.pendingPlace = null;
      this.redraw();
    }
  }

  async refreshHint(): Promise<void> {
    try {
      this.vm.hint = await this.api.getHint(this.gameId);
    } catch (err) {
      this.vm.message = err instanceof ApiError ? `${err.code}: ${err.detail}` : String(err);
    }
    this.redraw();
  }

  handleKey(key: string): void {
    if (key === 'h') {
      void this.refreshHint();
      return;
    }
    if (!this.vm.session) return;
    const d = this.vm.session.shape.length;
    if (key === ',' && d === 3) {
      this.vm.slice = (this.vm.slice + this.vm.session.shape[2] - 1) % this.vm.session.shape[2];
      this.redraw();
      return;
    }
    if (key === '.' && d === 3) {
      this.vm.slice = (this.vm.slice + 1) % this.vm.session.shape[2];
      this.redraw();
      return;
    }
    const binding = KEY_MOVES[key];
    if (!binding || binding.axis >= d) return;
    void this.submitMove(binding.axis, binding.sign);
  }

  /** Click an empty cell (as the placing side), then pick the tile value. */
  private bindBoardClicks(): void {
    if (this.vm.session?.human_role !== 'computer') return;
    for (const el of this.root.querySelectorAll<HTMLElement>('.cell')) {
      el.addEventListener('click', () => {
        const key = el.dataset.pos!;
        if (this.vm.cells.has(key)) return; // occupied: ignored client-side
        this.pendingPlace = key.split(',').map(Number);
        this.showExpPicker(el);
      });
    }
  }

  private showExpPicker(anchor: HTMLElement): void {
    anchor.querySelector('.picker')?.remove();
    const picker = document.createElement('span');
    picker.className = 'picker';
    for (const exp of [1, 2]) {
      const btn = document.createElement('button');
      btn.textContent = String(2 ** exp);
      btn.dataset.exp = String(exp);
      btn.addEventListener('click', (ev) => {
        ev.stopPropagation();
        const pos = this.pendingPlace;
        if (pos) void this.submitPlace(pos, exp);
      });
      picker.appendChild(btn);
    }
    anchor.appendChild(picker);
  }

}

// REST client. The fetch implementation is injectable so tests can script it.

import type { ApiErrorBody, Hint, Session } from './types.js';

export interface ResponseLike {
  ok: boolean;
  status: number;
  json(): Promise<unknown>;
}

export type FetchLike = (url: string, init?: { method?: string; headers?: Record<string, string>; body?: string }) => Promise<ResponseLike>;

export class ApiError extends Error {
  constructor(public status: number, public code: string, public detail: string) {
    super(`${code}: ${detail}`);
  }
}

export class Api {
  constructor(
    private base: string,
    private fetchImpl: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: { method: string; headers?: Record<string, string>; body?: string } = { method };
    if (body !== undefined) {
      init.headers = { 'content-type': 'application/json' };
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchImpl(this.base + path, init);
    const doc = await response.json();
    if (!response.ok) {
      const err = doc as ApiErrorBody;
      throw new ApiError(response.status, err.error ?? 'error', err.detail ?? 'request failed');
    }
    return doc as T;
  }

  createGame(body: { shape: number[]; human_role: string; mode: string; seed: number }): Promise<Session> {
    return this.request('POST', '/games', body);
  }

  getGame(id: string): Promise<Session> {
    return this.request('GET', `/games/${id}`);
  }

  postMove(id: string, move: { axis: number; sign: number }): Promise<Session> {
    return this.request('POST', `/games/${id}/move`, move);
  }

  postPlace(id: string, place: { pos: number[]; exp: number }): Promise<Session> {
    return this.request('POST', `/games/${id}/place`, place);
  }

  getHint(id: string): Promise<Hint> {
    return this.request('GET', `/games/${id}/hint`);
  }

  getSnake(id: string): Promise<{ path: number[][] }> {
    return this.request('GET', `/games/${id}/snake`);
  }
}

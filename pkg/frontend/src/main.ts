// Browser bootstrap: join the session from the query string, or show a
// create form.  ?server=http://host:port overrides the API base (the page
// can be served from anywhere; the service allows cross-origin requests).

import { Api, ApiError } from './api.js';
import { App } from './app.js';

function bases(): { http: string; ws: string } {
  const params = new URLSearchParams(window.location.search);
  const http = params.get('server') ?? '';
  const ws = http ? http.replace(/^http/, 'ws') : `ws://${window.location.host}`;
  return { http, ws };
}

function createForm(root: HTMLElement, api: Api): void {
  const form = document.createElement('form');
  form.id = 'create-form';
  form.innerHTML = `
    <label>shape <select name="shape">
      <option>4x4</option><option>2x2</option><option>3x3</option><option>3x3x3</option><option>2x2x2</option>
    </select></label>
    <label>role <select name="role">
      <option>player</option><option>computer</option><option>observer</option>
    </select></label>
    <label>mode <select name="mode">
      <option>paper</option><option>cooperative</option><option>adversarial</option><option>random</option>
    </select></label>
    <label>seed <input name="seed" type="number" value="0"></label>
    <button type="submit">new game</button>`;
  form.addEventListener('submit', async (ev) => {
    ev.preventDefault();
    const data = new FormData(form);
    const shape = String(data.get('shape')).split('x').map(Number);
    try {
      const session = await api.createGame({
        shape,
        human_role: String(data.get('role')),
        mode: String(data.get('mode')),
        seed: Number(data.get('seed')),
      });
      const params = new URLSearchParams(window.location.search);
      params.set('game', session.id);
      window.location.search = params.toString();
    } catch (err) {
      const banner = document.createElement('div');
      banner.id = 'banner';
      banner.textContent = err instanceof ApiError ? `${err.code}: ${err.detail}` : String(err);
      root.prepend(banner);
    }
  });
  root.appendChild(form);
}

export function boot(): void {
  const root = document.getElementById('app');
  if (!root) return;
  const { http, ws } = bases();
  const api = new Api(http);
  const params = new URLSearchParams(window.location.search);
  const gameId = params.get('game');
  if (!gameId) {
    createForm(root, api);
    return;
  }
  const app = new App(root, api, undefined, ws);
  window.addEventListener('keydown', (ev) => {
    if (ev.target instanceof HTMLInputElement) return;
    app.handleKey(ev.key);
  });
  void app.join(gameId);
}

boot();

// DOM rendering: full redraw of the board (plain grid for 1-D/2-D, one panel
// per last-axis slice for 3-D), the snake-path and chain overlays, the hint
// box, and the status banner.  Tiles are labeled with values, not exponents.

import { ViewModel, chainLength, describeHint, posKey } from './model.js';

const CELL = 56;
const GAP = 4;

function cellCenter(i: number, j: number): [number, number] {
  return [j * (CELL + GAP) + CELL / 2, i * (CELL + GAP) + CELL / 2];
}

function renderPanel(vm: ViewModel, slice: number | null, chain: number): HTMLElement {
  const session = vm.session!;
  const shape = session.shape;
  const rows = shape[0];
  const cols = shape[1] ?? 1;
  const panel = document.createElement('div');
  panel.className = 'panel';
  if (slice !== null && slice === vm.slice) panel.classList.add('selected-slice');
  if (slice !== null) {
    const label = document.createElement('div');
    label.className = 'slice-label';
    label.textContent = `slice axis2=${slice}`;
    panel.appendChild(label);
  }
  const grid = document.createElement('div');
  grid.className = 'grid';
  grid.style.gridTemplateColumns = `repeat(${cols}, ${CELL}px)`;
  const chainCells = new Set(vm.snake.slice(0, chain).map(posKey));
  const pathInPanel: number[][] = [];
  for (const pos of vm.snake) {
    if (slice === null || pos[2] === slice) pathInPanel.push(pos);
  }
  for (let i = 0; i < rows; i += 1) {
    for (let j = 0; j < cols; j += 1) {
      const pos = shape.length === 1 ? [i] : slice === null ? [i, j] : [i, j, slice];
      const key = posKey(pos);
      const exp = vm.cells.get(key);
      const div = document.createElement('div');
      div.className = 'cell';
      div.dataset.pos = key;
      if (exp !== undefined) {
        div.dataset.exp = String(exp);
        div.textContent = String(2 ** exp);
        div.classList.add(`tile-${Math.min(exp, 11)}`);
      }
      if (chainCells.has(key)) div.classList.add('chain');
      if (vm.hint?.place && posKey(vm.hint.place.pos) === key) div.classList.add('hint-cell');
      grid.appendChild(div);
    }
  }
  panel.appendChild(grid);

  // Snake overlay: the target sequence drawn as a polyline over the panel.
  const svg = document.createElementNS('http://www.w3.org/2000/svg', 'svg');
  svg.classList.add('snake-overlay');
  svg.setAttribute('width', String(cols * (CELL + GAP)));
  svg.setAttribute('height', String(rows * (CELL + GAP)));
  const line = document.createElementNS('http://www.w3.org/2000/svg', 'polyline');
  const points = pathInPanel.map(([i, j]) => cellCenter(i, j ?? 0).join(','));
  line.setAttribute('points', points.join(' '));
  line.dataset.path = pathInPanel.map(posKey).join(';');
  svg.appendChild(line);
  panel.appendChild(svg);
  return panel;
}

export function render(vm: ViewModel, root: HTMLElement): void {
  root.textContent = '';
  const banner = document.createElement('div');
  banner.id = 'banner';
  banner.textContent = vm.message;
  root.appendChild(banner);

  if (!vm.session) return;
  const session = vm.session;

  const status = document.createElement('div');
  status.id = 'status';
  status.innerHTML =
    `<span id="game-id">${session.id.slice(0, 8)}</span>` +
    ` <span id="mode">${session.mode}</span>` +
    ` <span id="role">you: ${session.human_role}</span>` +
    ` version <span id="version">${vm.version}</span>` +
    ` turn <span id="turn">${session.turn}</span>` +
    ` <span id="to-act">${vm.over ? 'game over' : `${session.to_act} to act`}</span>`;
  root.appendChild(status);

  const chain = chainLength(vm);
  const board = document.createElement('div');
  board.id = 'board';
  if (vm.busy) board.classList.add('busy');
  const slices = session.shape.length === 3 ? session.shape[2] : 0;
  if (slices > 0) {
    for (let k = 0; k < slices; k += 1) board.appendChild(renderPanel(vm, k, chain));
  } else {
    board.appendChild(renderPanel(vm, null, chain));
  }
  root.appendChild(board);

  const hint = document.createElement('div');
  hint.id = 'hint';
  if (vm.hint) {
    hint.dataset.raw = JSON.stringify(vm.hint);
    hint.textContent = describeHint(vm.hint);
  } else {
    hint.textContent = 'hint: press h';
  }
  root.appendChild(hint);

  const chainInfo = document.createElement('div');
  chainInfo.id = 'chain';
  chainInfo.textContent = `chain ${chain} / ${vm.snake.length}`;
  root.appendChild(chainInfo);

  const help = document.createElement('div');
  help.id = 'help';
  help.textContent =
    'arrows: ↑ axis0− ↓ axis0+ ← axis1− → axis1+' +
    (slices > 0 ? ' · [ axis2− ] axis2+ · ,/. select slice' : '') +
    (session.human_role === 'computer' ? ' · click an empty cell, then pick 2 or 4' : '') +
    ' · h hint';
  root.appendChild(help);
}

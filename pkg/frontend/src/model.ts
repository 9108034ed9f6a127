// View model: a pure mirror of the latest server state plus UI selections.
// No game rules live here; the one derived quantity (the descending-chain
// overlay) is a display read-out of the server board along the snake path.

import type { BoardJson, GameEvent, Hint, Session } from './types.js';

export interface ViewModel {
  session: Session | null;
  cells: Map<string, number>;
  version: number;
  slice: number;
  hint: Hint | null;
  snake: number[][];
  message: string;
  busy: boolean;
  over: boolean;
}

export function emptyModel(): ViewModel {
  return {
    session: null,
    cells: new Map(),
    version: 0,
    slice: 0,
    hint: null,
    snake: [],
    message: '',
    busy: false,
    over: false,
  };
}

export const posKey = (pos: number[]): string => pos.join(',');

export function boardToCells(board: BoardJson): Map<string, number> {
  const cells = new Map<string, number>();
  for (const cell of board.cells) cells.set(posKey(cell.pos), cell.exp);
  return cells;
}

export function applySnapshot(vm: ViewModel, session: Session): void {
  vm.session = session;
  vm.cells = boardToCells(session.board);
  vm.version = session.version;
  vm.over = session.over;
  if (vm.slice >= (session.shape[2] ?? 1)) vm.slice = 0;
}

/** Applies one event; returns false when a version gap demands a resync. */
export function applyEvent(vm: ViewModel, event: GameEvent): boolean {
  if (event.version !== vm.version + 1) return false;
  vm.cells = boardToCells(event.board_after);
  vm.version = event.version;
  if (vm.session) {
    vm.session.version = event.version;
    vm.session.turn = event.turn;
    vm.session.to_act = event.actor === 'computer' ? 'player' : 'computer';
    vm.session.board = event.board_after;
  }
  if (vm.hint && vm.hint.version < event.version) vm.hint = null;
  return true;
}

/** Length of the intact descending exponent chain along the snake path. */
export function chainLength(vm: ViewModel): number {
  if (vm.snake.length === 0) return 0;
  const head = vm.cells.get(posKey(vm.snake[0]));
  if (head === undefined) return 0;
  let length = 0;
  for (let m = 0; m < vm.snake.length; m += 1) {
    if (vm.cells.get(posKey(vm.snake[m])) !== head - m) break;
    length = m + 1;
  }
  return length;
}

export function describeHint(hint: Hint): string {
  if (hint.move) {
    const arrow = hint.move.sign < 0 ? '−' : '+';
    return `${hint.rationale}: move axis ${hint.move.axis} ${arrow}`;
  }
  if (hint.place) {
    return `${hint.rationale}: place ${2 ** hint.place.exp} at (${hint.place.pos.join(', ')})`;
  }
  return hint.rationale;
}

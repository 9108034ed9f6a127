// Shared assertions: diff the rendered DOM against a server board JSON.

import { expect } from 'vitest';
import type { BoardJson } from '../src/types.js';

export function renderedCells(root: HTMLElement): Map<string, number> {
  const out = new Map<string, number>();
  for (const el of root.querySelectorAll<HTMLElement>('.cell[data-exp]')) {
    out.set(el.dataset.pos!, Number(el.dataset.exp));
  }
  return out;
}

export function expectBoardMatches(root: HTMLElement, board: BoardJson): void {
  const dom = renderedCells(root);
  const server = new Map(board.cells.map((c) => [c.pos.join(','), c.exp]));
  expect(Object.fromEntries(dom)).toEqual(Object.fromEntries(server));
  for (const cell of board.cells) {
    const el = root.querySelector<HTMLElement>(`.cell[data-pos="${cell.pos.join(',')}"]`);
    expect(el, `cell ${cell.pos}`).toBeTruthy();
    expect(el!.textContent).toBe(String(2 ** cell.exp)); // values, not exponents
  }
}

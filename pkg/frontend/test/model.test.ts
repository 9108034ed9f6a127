// View-model reducers and the random-event rendering property.

import { describe, expect, test } from 'vitest';
import { applyEvent, applySnapshot, chainLength, describeHint, emptyModel } from '../src/model.js';
import { render } from '../src/render.js';
import type { BoardJson, GameEvent, Session } from '../src/types.js';
import { expectBoardMatches } from './helpers.js';

function session(board: BoardJson, version = 1): Session {
  return {
    id: 'test-session',
    version,
    shape: board.shape,
    mode: 'paper',
    seed: 0,
    human_role: 'player',
    to_act: 'player',
    turn: version,
    over: false,
    board,
  };
}

function event(version: number, board: BoardJson, actor = 'player'): GameEvent {
  return {
    turn: version,
    actor,
    action: actor === 'player' ? { type: 'move', axis: 0, sign: 1 } : { type: 'place', pos: [0, 0], exp: 1 },
    rationale: actor === 'player' ? 'fallback' : 'step2',
    board_after: board,
    version,
  };
}

// Deterministic PRNG so the random-sequence property is reproducible.
function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

function randomBoard(rand: () => number, shape: number[]): BoardJson {
  const cells = [];
  const total = shape.reduce((a, b) => a * b, 1);
  for (let idx = 0; idx < total; idx += 1) {
    if (rand() < 0.45) continue;
    const pos: number[] = [];
    let rest = idx;
    for (let d = shape.length - 1; d >= 0; d -= 1) {
      pos.unshift(rest % shape[d]);
      rest = Math.floor(rest / shape[d]);
    }
    cells.push({ pos, exp: 1 + Math.floor(rand() * 9) });
  }
  return { shape, cells };
}

describe('event application', () => {
  test('sequential events advance the version and the board', () => {
    const vm = emptyModel();
    const b0: BoardJson = { shape: [2, 2], cells: [{ pos: [0, 0], exp: 2 }] };
    applySnapshot(vm, session(b0));
    const b1: BoardJson = { shape: [2, 2], cells: [{ pos: [1, 0], exp: 2 }] };
    expect(applyEvent(vm, event(2, b1))).toBe(true);
    expect(vm.version).toBe(2);
    expect(vm.cells.get('1,0')).toBe(2);
    expect(vm.cells.has('0,0')).toBe(false);
  });

  test('a version gap demands a resync', () => {
    const vm = emptyModel();
    applySnapshot(vm, session({ shape: [2, 2], cells: [] }, 3));
    expect(applyEvent(vm, event(7, { shape: [2, 2], cells: [] }))).toBe(false);
    expect(vm.version).toBe(3);
  });

  test('a hint from an older version is dropped once the board moves on', () => {
    const vm = emptyModel();
    applySnapshot(vm, session({ shape: [2, 2], cells: [] }, 1));
    vm.hint = { version: 1, rationale: 'case1', move: { axis: 0, sign: 1 } };
    applyEvent(vm, event(2, { shape: [2, 2], cells: [] }));
    expect(vm.hint).toBeNull();
  });
});

describe('rendered board always equals the latest server board', () => {
  test('random event sequences over 2-D and 3-D shapes', () => {
    for (const [seed, shape] of [[1, [3, 3]], [2, [2, 3]], [3, [2, 2, 2]]] as const) {
      const rand = mulberry32(seed);
      const vm = emptyModel();
      const root = document.createElement('div');
      document.body.appendChild(root);
      vm.snake = [];
      applySnapshot(vm, session(randomBoard(rand, shape as unknown as number[]), 1));
      render(vm, root);
      expectBoardMatches(root, vm.session!.board);
      for (let step = 2; step < 30; step += 1) {
        const board = randomBoard(rand, shape as unknown as number[]);
        expect(applyEvent(vm, event(step, board, step % 2 ? 'player' : 'computer'))).toBe(true);
        render(vm, root);
        expectBoardMatches(root, board);
      }
      root.remove();
    }
  });
});

describe('chain overlay read-out', () => {
  test('counts the descending chain along the snake path', () => {
    const vm = emptyModel();
    vm.snake = [[0, 0], [0, 1], [1, 1], [1, 0]];
    applySnapshot(
      vm,
      session({
        shape: [2, 2],
        cells: [
          { pos: [0, 0], exp: 5 },
          { pos: [0, 1], exp: 4 },
          { pos: [1, 1], exp: 3 },
          { pos: [1, 0], exp: 1 },
        ],
      }),
    );
    expect(chainLength(vm)).toBe(3);
  });

  test('empty origin means no chain', () => {
    const vm = emptyModel();
    vm.snake = [[0, 0], [0, 1]];
    applySnapshot(vm, session({ shape: [1, 2], cells: [{ pos: [0, 1], exp: 1 }] }));
    expect(chainLength(vm)).toBe(0);
  });
});

describe('hint text', () => {
  test('moves and placements read as values with their case tag', () => {
    expect(describeHint({ version: 1, rationale: 'case1', move: { axis: 1, sign: -1 } })).toBe(
      'case1: move axis 1 −',
    );
    expect(
      describeHint({ version: 1, rationale: 'step2', place: { pos: [0, 1], exp: 2 } }),
    ).toBe('step2: place 4 at (0, 1)');
  });
});

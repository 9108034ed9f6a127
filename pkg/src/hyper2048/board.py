"""Sparse board state and the slide-and-merge move mechanics.

Tiles are stored as exponents: a cell holding k represents the tile value
2**k, with k >= 1 (the smallest tile is 2).  A move compacts every 1-D fiber
along the chosen axis toward the chosen end; adjacent equal tiles merge once
per move, scanned from the destination end, and a merged tile cannot merge
again within the same move.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping

from .geometry import (
    Move,
    Pos,
    Shape,
    cell_count,
    check_pos,
    in_bounds,
    moves_for,
    snake_path,
    snake_rank,
    validate_move,
    validate_shape,
)


@dataclass(frozen=True)
class Board:
    """Immutable-by-convention sparse board: occupied cells map to exponents."""

    shape: Shape
    cells: dict[Pos, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for pos, exp in self.cells.items():
            if not in_bounds(pos, self.shape):
                raise ValueError(f"cell {pos} is outside the board {self.shape}")
            if not isinstance(exp, int) or exp < 1:
                raise ValueError(f"exponent at {pos} must be an integer >= 1, got {exp!r}")

    @classmethod
    def empty(cls, shape: Shape) -> "Board":
        return cls(validate_shape(shape), {})

    @classmethod
    def of(cls, shape: Shape, cells: Mapping[Pos, int]) -> "Board":
        shape = validate_shape(shape)
        return cls(shape, {check_pos(p, shape): int(e) for p, e in cells.items()})

    def get(self, pos: Pos) -> int | None:
        return self.cells.get(pos)

    def with_tile(self, pos: Pos, exp: int) -> "Board":
        """A new board with a tile placed on an empty cell."""
        pos = check_pos(pos, self.shape)
        if pos in self.cells:
            raise ValueError(f"cell {pos} is already occupied")
        cells = dict(self.cells)
        cells[pos] = exp
        return Board(self.shape, cells)

    def empty_cells(self) -> list[Pos]:
        """Empty cells in snake order (deterministic iteration everywhere)."""
        return [p for p in snake_path(self.shape) if p not in self.cells]

    def is_full(self) -> bool:
        return len(self.cells) == cell_count(self.shape)

    def value_sum(self) -> int:
        return sum(2**e for e in self.cells.values())


@dataclass(frozen=True)
class MoveOutcome:
    board_after: Board
    merges: tuple[tuple[Pos, int], ...]
    changed: bool


def _slide(vals: list[int | None]) -> tuple[list[int | None], list[tuple[int, int]], dict[int, int], set[int]]:
    """Compact one fiber toward slot 0.

    Returns (new_vals, merges as (slot, exponent), source->destination slot
    map for every occupied source, and the set of source slots that took
    part in a merge).
    """
    tiles = [(i, v) for i, v in enumerate(vals) if v is not None]
    out: list[int | None] = [None] * len(vals)
    merges: list[tuple[int, int]] = []
    dest: dict[int, int] = {}
    merged_srcs: set[int] = set()
    k = 0
    i = 0
    while i < len(tiles):
        src, exp = tiles[i]
        if i + 1 < len(tiles) and tiles[i + 1][1] == exp:
            out[k] = exp + 1
            merges.append((k, exp + 1))
            dest[src] = k
            dest[tiles[i + 1][0]] = k
            merged_srcs.update((src, tiles[i + 1][0]))
            i += 2
        else:
            out[k] = exp
            dest[src] = k
            i += 1
        k += 1
    return out, merges, dest, merged_srcs


@lru_cache(maxsize=2048)
def _fiber_slots(shape: Shape, move: Move) -> tuple[tuple[Pos, ...], ...]:
    """Cells of each fiber along move.axis, ordered from the destination end."""
    axis, sign = move
    n = shape[axis]
    other = [range(s) for i, s in enumerate(shape) if i != axis]
    coords = range(n) if sign == -1 else range(n - 1, -1, -1)
    return tuple(
        tuple(base[:axis] + (c,) + base[axis:] for c in coords)
        for base in itertools.product(*other)
    )


def apply_move(board: Board, move: Move) -> MoveOutcome:
    move = validate_move(move, board.shape)
    new_cells: dict[Pos, int] = {}
    merges: list[tuple[Pos, int]] = []
    changed = False
    for slots in _fiber_slots(board.shape, move):
        vals = [board.cells.get(p) for p in slots]
        out, fiber_merges, _, _ = _slide(vals)
        if out != vals:
            changed = True
        for k, v in enumerate(out):
            if v is not None:
                new_cells[slots[k]] = v
        merges.extend((slots[k], v) for k, v in fiber_merges)
    if not changed:
        return MoveOutcome(board, (), False)
    return MoveOutcome(Board(board.shape, new_cells), tuple(merges), True)


def tile_destinations(board: Board, move: Move) -> tuple[dict[Pos, Pos], set[Pos]]:
    """Where each occupied cell's tile ends up under the move.

    Returns (source position -> destination position, set of source positions
    whose tiles took part in a merge).  Tiles absorbed into a merge map to the
    merge cell.
    """
    move = validate_move(move, board.shape)
    dests: dict[Pos, Pos] = {}
    merged: set[Pos] = set()
    for slots in _fiber_slots(board.shape, move):
        vals = [board.cells.get(p) for p in slots]
        _, _, dest, merged_srcs = _slide(vals)
        for src, dst in dest.items():
            dests[slots[src]] = slots[dst]
        merged.update(slots[s] for s in merged_srcs)
    return dests, merged


def legal_moves(board: Board) -> list[Move]:
    """Moves that change the board, in deterministic (axis, sign) order."""
    return [mv for mv in moves_for(board.shape) if apply_move(board, mv).changed]


def is_game_over(board: Board) -> bool:
    """True iff no empty cell remains and no move changes the board."""
    if not board.is_full():
        return False
    return not legal_moves(board)


def max_tile(board: Board) -> int | None:
    """Largest exponent on the board, or None when empty."""
    return max(board.cells.values(), default=None)


def favourable_prefix(board: Board) -> int:
    """Length of the longest intact descending snake chain from the origin.

    The chain requires cell S_m to hold exponent(S_0) - m for every m below
    the returned length; a board is favourable when the chain covers every
    occupied cell and exponents step down by exactly one along S.
    """
    path = snake_path(board.shape)
    head = board.cells.get(path[0])
    if head is None:
        return 0
    length = 0
    for m, pos in enumerate(path):
        if board.cells.get(pos) != head - m:
            break
        length = m + 1
    return length


def board_to_json(board: Board) -> dict:
    """Shared wire format; cells are sorted by snake rank."""
    ranked = sorted(board.cells.items(), key=lambda kv: snake_rank(kv[0], board.shape))
    return {
        "shape": list(board.shape),
        "cells": [{"pos": list(pos), "exp": exp} for pos, exp in ranked],
    }


def board_from_json(obj: Mapping) -> Board:
    shape = validate_shape(obj["shape"])
    cells = {tuple(c["pos"]): int(c["exp"]) for c in obj["cells"]}
    return Board.of(shape, cells)

"""Grid geometry for d-dimensional sliding-tile boards.

Positions are d-tuples of cell coordinates; shapes are tuples of positive
dimension sizes.  The snake ordering S enumerates every cell exactly once,
starting at the origin, so that consecutive cells are always axis-adjacent:
in 2-D it sweeps the rows boustrophedon style (row q runs left-to-right when
q is even, right-to-left when odd); for d >= 3 the board is treated as n_d
layers of (d-1)-dimensional boards, each layer traversed in its own snake
order, reversed on odd layers so the seam between layers stays adjacent.
"""

from __future__ import annotations

import itertools
import math
from functools import lru_cache
from typing import Iterable, Iterator, NamedTuple

Shape = tuple[int, ...]
Pos = tuple[int, ...]

# Shapes whose cell product exceeds this are rejected outright.
MAX_CELLS = 2**32


class ShapeError(ValueError):
    """Raised for malformed or unsupported board shapes."""


class Move(NamedTuple):
    """One of the 2d slide directions: an axis plus a sign.

    sign -1 slides every tile toward coordinate 0 on that axis, sign +1
    toward the high end.
    """

    axis: int
    sign: int

    def opposite(self) -> "Move":
        return Move(self.axis, -self.sign)


def validate_shape(dims: Iterable[int]) -> Shape:
    shape = tuple(int(n) for n in dims)
    if len(shape) < 1:
        raise ShapeError("a board needs at least one dimension")
    if any(n < 1 for n in shape):
        raise ShapeError(f"dimension sizes must all be >= 1, got {shape}")
    if math.prod(shape) > MAX_CELLS:
        raise ShapeError(f"{'x'.join(map(str, shape))} exceeds the supported cell budget")
    return shape


def cell_count(shape: Shape) -> int:
    return math.prod(shape)


def in_bounds(pos: Pos, shape: Shape) -> bool:
    return len(pos) == len(shape) and all(0 <= c < n for c, n in zip(pos, shape))


def check_pos(pos: Iterable[int], shape: Shape) -> Pos:
    p = tuple(int(c) for c in pos)
    if not in_bounds(p, shape):
        raise ValueError(f"position {p} is outside the {'x'.join(map(str, shape))} board")
    return p


def positions(shape: Shape) -> Iterator[Pos]:
    """All cells of the board in plain row-major order."""
    return itertools.product(*(range(n) for n in shape))


def moves_for(shape: Shape) -> list[Move]:
    """The 2d distinct moves, ordered by axis then sign (-1 before +1)."""
    return [Move(axis, sign) for axis in range(len(shape)) for sign in (-1, +1)]


def validate_move(move: Move, shape: Shape) -> Move:
    axis, sign = move
    if not 0 <= axis < len(shape) or sign not in (-1, 1):
        raise ValueError(f"move {move!r} is invalid for a {len(shape)}-dimensional board")
    return Move(axis, sign)


def snake_index(m: int, shape: Shape) -> Pos:
    """The m-th cell of the snake sequence S (0-based)."""
    if not 0 <= m < cell_count(shape):
        raise IndexError(f"snake index {m} out of range for shape {shape}")
    return _snake_index(m, shape)


def _snake_index(m: int, shape: Shape) -> Pos:
    d = len(shape)
    if d == 1:
        return (m,)
    if d == 2:
        # 2-D closed form: row q, column r swept alternately.
        q, r = divmod(m, shape[1])
        j = shape[1] - 1 - r if q % 2 else r
        return (q, j)
    layer = cell_count(shape[:-1])
    k, r = divmod(m, layer)
    if k % 2:
        r = layer - 1 - r
    return _snake_index(r, shape[:-1]) + (k,)


def snake_rank(pos: Pos, shape: Shape) -> int:
    """Inverse of snake_index: the rank of a cell along S."""
    pos = check_pos(pos, shape)
    return _snake_rank(pos, shape)


def _snake_rank(pos: Pos, shape: Shape) -> int:
    d = len(shape)
    if d == 1:
        return pos[0]
    if d == 2:
        q, j = pos
        r = shape[1] - 1 - j if q % 2 else j
        return q * shape[1] + r
    layer = cell_count(shape[:-1])
    k = pos[-1]
    r = _snake_rank(pos[:-1], shape[:-1])
    if k % 2:
        r = layer - 1 - r
    return k * layer + r


@lru_cache(maxsize=512)
def snake_path(shape: Shape) -> tuple[Pos, ...]:
    """The full snake sequence as a tuple (cached per shape)."""
    return tuple(_snake_index(m, shape) for m in range(cell_count(shape)))


def prev_tile(pos: Pos, shape: Shape) -> Pos:
    """The snake predecessor of a cell; the origin has none."""
    m = snake_rank(pos, shape)
    if m == 0:
        raise ValueError("the origin cell heads the snake sequence and has no predecessor")
    return _snake_index(m - 1, shape)


def rectilinear_neighbourhood(pos: Pos, shape: Shape) -> set[Pos]:
    """All cells sharing an axis line with pos (pos itself excluded)."""
    pos = check_pos(pos, shape)
    out: set[Pos] = set()
    for axis, n in enumerate(shape):
        for v in range(n):
            if v != pos[axis]:
                out.add(pos[:axis] + (v,) + pos[axis + 1:])
    return out


def diagonal_neighbourhood(pos: Pos, shape: Shape) -> set[Pos]:
    """Complement of the rectilinear neighbourhood (pos itself excluded)."""
    pos = check_pos(pos, shape)
    rect = rectilinear_neighbourhood(pos, shape)
    return {q for q in positions(shape) if q != pos and q not in rect}

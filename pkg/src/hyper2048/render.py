"""Plain-text board rendering: 2-D grids, and 3-D boards as 2-D slices."""

from __future__ import annotations

from .board import Board
from .geometry import Pos


def _cell_text(board: Board, pos: Pos) -> str:
    exp = board.cells.get(pos)
    return str(2**exp) if exp is not None else "."


def _grid_lines(board: Board, fixed: tuple[int, ...] = ()) -> list[str]:
    """Rows of a 2-D (sub-)board; extra trailing coordinates come from fixed."""
    n1, n2 = board.shape[0], board.shape[1]
    width = max(
        [len(_cell_text(board, (i, j) + fixed)) for i in range(n1) for j in range(n2)] + [1]
    )
    return [
        " ".join(_cell_text(board, (i, j) + fixed).rjust(width) for j in range(n2))
        for i in range(n1)
    ]


def render_board(board: Board) -> str:
    d = len(board.shape)
    if d == 1:
        width = max([len(_cell_text(board, (i,))) for i in range(board.shape[0])] + [1])
        return " ".join(_cell_text(board, (i,)).rjust(width) for i in range(board.shape[0]))
    if d == 2:
        return "\n".join(_grid_lines(board))
    if d == 3:
        slices = []
        for k in range(board.shape[2]):
            lines = _grid_lines(board, (k,))
            slices.append([f"[axis2={k}]"] + lines)
        height = max(len(s) for s in slices)
        widths = [max(len(line) for line in s) for s in slices]
        rows = []
        for r in range(height):
            rows.append(
                "   ".join(
                    (s[r] if r < len(s) else "").ljust(w) for s, w in zip(slices, widths)
                ).rstrip()
            )
        return "\n".join(rows)
    raise ValueError(f"rendering supports up to 3 dimensions, got {d}")

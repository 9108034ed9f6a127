"""Exhaustive memoized game-tree search for small boards.

Computes the exact best (or worst) reachable tile exponent under a given
adversary mode, the ground truth the larger simulation runs are checked
against.  Guarded to boards of at most ORACLE_CELL_LIMIT cells; anything
bigger is out of scope for exact search and is verified constructively by
the match harness instead.

Game model: the computer and the player strictly alternate, computer first.
A computer turn places a tile of exponent 1 or 2 (value 2 or 4) on an empty
cell; a player turn applies a board-changing move.  The game ends when the
player has no legal move, which only happens on a full board.  Since tile
exponents never decrease, the best final board's maximum equals the maximum
over every reachable state.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Iterable, Iterator

from .board import Board, apply_move, favourable_prefix, legal_moves, max_tile
from .geometry import Move, Pos, Shape, cell_count, snake_path, validate_shape

ORACLE_CELL_LIMIT = 6
DEFAULT_STATE_CAP = 5_000_000

SEARCH_MODES = ("cooperative", "adversarial", "paper")

PLAYER = "player"
COMPUTER = "computer"

# Witness events: ("place", pos, exp) and ("move", axis, sign).
WitnessEvent = tuple


class CapExceeded(RuntimeError):
    """Search state budget exhausted; the result is partial."""


class IllegalStepError(ValueError):
    def __init__(self, index: int, message: str):
        super().__init__(f"step {index}: {message}")
        self.index = index


@dataclass(frozen=True)
class OracleResult:
    shape: Shape
    mode: str
    max_exponent: int
    witness: tuple[WitnessEvent, ...]
    states_visited: int
    complete: bool

    def to_json(self) -> dict:
        return {
            "shape": list(self.shape),
            "mode": self.mode,
            "max_exponent": self.max_exponent,
            "states_visited": self.states_visited,
            "complete": self.complete,
            "witness": [list(ev) for ev in self.witness],
        }


def encode_board(board: Board) -> int:
    """Canonical fixed-radix integer over snake-ordered cells (0 = empty)."""
    radix = cell_count(board.shape) + 4
    code = 0
    for pos in snake_path(board.shape):
        code = code * radix + board.cells.get(pos, 0)
    return code


def _check_searchable(shape: Shape) -> Shape:
    shape = validate_shape(shape)
    if cell_count(shape) > ORACLE_CELL_LIMIT:
        raise ValueError(
            f"shape {'x'.join(map(str, shape))} exceeds the {ORACLE_CELL_LIMIT}-cell oracle guard"
        )
    return shape


def _spawn_menu(board: Board) -> Iterator[tuple[Pos, int]]:
    for pos in board.empty_cells():
        yield pos, 1
        yield pos, 2


class _Search:
    """Memoized alternating-turn search for one (shape, mode) pair.

    objective "exponent" scores a subtree by the final board's maximum
    exponent (exponents never decrease, so this is the max over every state
    passed through); objective "prefix" scores it by the best favourable
    chain length reached anywhere in the subtree, which is not monotone and
    is therefore folded in at every node.
    """

    def __init__(
        self,
        shape: Shape,
        mode: str,
        cap: int = DEFAULT_STATE_CAP,
        objective: str = "exponent",
    ):
        if mode not in SEARCH_MODES:
            raise ValueError(f"oracle search supports modes {SEARCH_MODES}, not {mode!r}")
        if objective not in ("exponent", "prefix"):
            raise ValueError(f"unknown search objective {objective!r}")
        self.shape = _check_searchable(shape)
        self.mode = mode
        self.cap = cap
        self.objective = objective
        self.memo: dict[tuple, int] = {}
        self.visited = 0
        self.max_seen = 0

    def _metric(self, board: Board) -> int:
        if self.objective == "prefix":
            return favourable_prefix(board)
        return max_tile(board) or 0

    def _key(self, board: Board, to_act: str, last_move: Move | None) -> tuple:
        if self.mode == "paper":
            return (encode_board(board), to_act, last_move)
        return (encode_board(board), to_act)

    def _placements(self, board: Board, last_move: Move | None) -> list[tuple[Pos, int]]:
        if self.mode == "paper":
            if not board.cells:
                # Scenario-maximum over the seeded random opening: any cell, value 4.
                return [(pos, 2) for pos in board.empty_cells()]
            from .strategies import paper_placement

            placement, _ = paper_placement(board, last_move)
            return [(placement.pos, placement.exp)]
        return list(_spawn_menu(board))

    def value(self, board: Board, to_act: str, last_move: Move | None = None) -> int:
        key = self._key(board, to_act, last_move)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        self.visited += 1
        if self.visited > self.cap:
            raise CapExceeded(f"state cap {self.cap} exceeded")
        here = self._metric(board)
        if here > self.max_seen:
            self.max_seen = here
        if to_act == PLAYER:
            moves = legal_moves(board)
            if not moves:
                result = here
            else:
                result = max(
                    self.value(apply_move(board, mv).board_after, COMPUTER, mv) for mv in moves
                )
        else:
            placements = self._placements(board, last_move)
            if not placements:
                result = here
            else:
                values = (
                    self.value(board.with_tile(pos, exp), PLAYER, last_move)
                    for pos, exp in placements
                )
                result = min(values) if self.mode == "adversarial" else max(values)
        if self.objective == "prefix" and self.mode != "adversarial":
            result = max(result, here)
        self.memo[key] = result
        return result

    def witness(self) -> tuple[WitnessEvent, ...]:
        """An optimal line of play, replayed from the empty board."""
        events: list[WitnessEvent] = []
        board = Board.empty(self.shape)
        to_act = COMPUTER
        last_move: Move | None = None
        target = self.value(board, to_act, last_move)
        while True:
            if to_act == PLAYER:
                moves = legal_moves(board)
                if not moves:
                    break
                for mv in moves:
                    child = apply_move(board, mv).board_after
                    if self.value(child, COMPUTER, mv) == target:
                        events.append(("move", mv.axis, mv.sign))
                        board, to_act, last_move = child, COMPUTER, mv
                        break
                else:  # pragma: no cover - value function guarantees a match
                    raise AssertionError("no child realizes the node value")
            else:
                placements = self._placements(board, last_move)
                if not placements:
                    break
                for pos, exp in placements:
                    child = board.with_tile(pos, exp)
                    if self.value(child, PLAYER, last_move) == target:
                        events.append(("place", pos, exp))
                        board, to_act = child, PLAYER
                        break
                else:  # pragma: no cover
                    raise AssertionError("no placement realizes the node value")
        return tuple(events)


_search_cache: dict[tuple[Shape, str, str], _Search] = {}


def _searcher(shape: Shape, mode: str, objective: str = "exponent") -> _Search:
    shape = validate_shape(shape)
    key = (shape, mode, objective)
    search = _search_cache.get(key)
    if search is None:
        search = _Search(shape, mode, objective=objective)
        _search_cache[key] = search
    return search


def state_value(
    board: Board,
    to_act: str,
    mode: str,
    last_move: Move | None = None,
    objective: str = "exponent",
) -> int:
    """Exact game value of an in-progress state (memoized per shape and mode)."""
    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, 20_000))
    try:
        return _searcher(board.shape, mode, objective).value(board, to_act, last_move)
    finally:
        sys.setrecursionlimit(old_limit)


def reachable_max(shape: Shape, mode: str = "cooperative", cap: int = DEFAULT_STATE_CAP) -> OracleResult:
    """Exact max reachable exponent over the whole game tree for the mode."""
    shape = _check_searchable(shape)
    search = _Search(shape, mode, cap)
    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, 20_000))
    try:
        value = search.value(Board.empty(shape), COMPUTER, None)
        witness = search.witness()
        complete = True
    except CapExceeded:
        value = search.max_seen
        witness = ()
        complete = False
    finally:
        sys.setrecursionlimit(old_limit)
    return OracleResult(shape, mode, value, witness, search.visited, complete)


def reachable_boards(shape: Shape, mode: str = "cooperative", cap: int = DEFAULT_STATE_CAP) -> set[int]:
    """Forward BFS over every reachable board encoding (memo-free cross-check).

    For cooperative (and random, which shares the spawn menu) this is the
    literal reachable-state closure; for paper mode placements are forced by
    the deterministic rule.
    """
    shape = _check_searchable(shape)
    if mode == "adversarial":
        raise ValueError("adversarial reachability depends on the minimax policy; use reachable_max")
    start = Board.empty(shape)
    seen: set[tuple] = set()
    boards: set[int] = set()
    stack: list[tuple[Board, str, Move | None]] = [(start, COMPUTER, None)]
    searcher = _Search(shape, "paper" if mode == "paper" else "cooperative", cap)
    while stack:
        board, to_act, last_move = stack.pop()
        key = (encode_board(board), to_act, last_move if mode == "paper" else None)
        if key in seen:
            continue
        seen.add(key)
        if len(seen) > cap:
            raise CapExceeded(f"state cap {cap} exceeded")
        boards.add(encode_board(board))
        if to_act == PLAYER:
            for mv in legal_moves(board):
                stack.append((apply_move(board, mv).board_after, COMPUTER, mv))
        else:
            for pos, exp in searcher._placements(board, last_move):
                stack.append((board.with_tile(pos, exp), PLAYER, last_move))
    return boards


def unreachability_check(shape: Shape, exponent: int, mode: str = "cooperative") -> bool:
    """True iff no reachable state ever contains a tile of the exponent."""
    shape = _check_searchable(shape)
    if mode in ("cooperative", "random", "paper"):
        search_mode = "paper" if mode == "paper" else "cooperative"
        decode_radix = cell_count(shape) + 4
        for code in reachable_boards(shape, search_mode):
            while code:
                code, exp = divmod(code, decode_radix)
                if exp == exponent:
                    return False
        return True
    # Adversarial: the player cannot force the exponent into existence.
    return reachable_max(shape, mode).max_exponent < exponent


def replay(witness: Iterable[WitnessEvent], shape: Shape) -> Board:
    """Apply an alternating placement/move witness from the empty board."""
    shape = validate_shape(shape)
    board = Board.empty(shape)
    expect = COMPUTER
    for i, event in enumerate(witness):
        kind = event[0]
        if kind == "place":
            if expect != COMPUTER:
                raise IllegalStepError(i, "placement out of turn")
            _, pos, exp = event
            pos = tuple(pos)
            if exp not in (1, 2):
                raise IllegalStepError(i, f"spawn exponent must be 1 or 2, got {exp}")
            if board.cells.get(pos) is not None:
                raise IllegalStepError(i, f"cell {pos} is occupied")
            board = board.with_tile(pos, exp)
            expect = PLAYER
        elif kind == "move":
            if expect != PLAYER:
                raise IllegalStepError(i, "move out of turn")
            _, axis, sign = event
            outcome = apply_move(board, Move(axis, sign))
            if not outcome.changed:
                raise IllegalStepError(i, f"move {Move(axis, sign)} changes nothing")
            board = outcome.board_after
            expect = COMPUTER
        else:
            raise IllegalStepError(i, f"unknown event kind {kind!r}")
    return board

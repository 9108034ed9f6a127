"""Deterministic policies for both sides of the game.

The computer side places tiles: the scripted adversary anchors on the
strongest tile and feeds value-4 tiles into its rectilinear neighbourhood
(value-2 tiles into the diagonal region while only 2s are on the board),
placed on the half of the board the last move slid away from.  Cooperative
and adversarial modes replace the scripted rule with exact best/worst-case
placement on small boards, falling back to a one-ply mergeability greedy on
boards beyond the oracle guard.

The player side builds a descending chain of exponents along the snake
sequence: keep the chain head on the origin, assemble the next chain value
on the target cell (the cell after the intact chain), and merge the target
into its predecessor whenever the two match, rolling value toward the head.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .board import (
    Board,
    _fiber_slots,
    apply_move,
    favourable_prefix,
    legal_moves,
    max_tile,
    tile_destinations,
)
from .geometry import (
    Move,
    Pos,
    Shape,
    cell_count,
    rectilinear_neighbourhood,
    diagonal_neighbourhood,
    snake_path,
    snake_rank,
)
from .oracle import ORACLE_CELL_LIMIT, state_value

MODES = ("paper", "cooperative", "adversarial", "random")

SPAWN_EXPONENTS = (1, 2)


class NoLegalMoveError(RuntimeError):
    """The player has no legal move: the game is over."""


class BoardFullError(ValueError):
    """The computer has nowhere to place a tile."""


@dataclass(frozen=True)
class Placement:
    pos: Pos
    exp: int  # 1 or 2 only: the adversary spawns 2s and 4s


@dataclass
class PlayerPolicyState:
    """Monotone progress marker: the furthest snake index the chain reached."""

    current_m: int = 0


@dataclass(frozen=True)
class StrategyDecision:
    rationale: str
    move: Move | None = None
    placement: Placement | None = None

    def to_json(self) -> dict:
        out: dict = {"rationale": self.rationale}
        if self.move is not None:
            out["move"] = {"axis": self.move.axis, "sign": self.move.sign}
        if self.placement is not None:
            out["place"] = {"pos": list(self.placement.pos), "exp": self.placement.exp}
        return out


def check_mode(mode: str) -> str:
    if mode not in MODES:
        raise ValueError(f"unknown adversary mode {mode!r}; expected one of {MODES}")
    return mode


# ---------------------------------------------------------------- adversary

def adversary_open(shape: Shape, seed: int) -> Placement:
    """Opening placement: a value-4 tile on a seeded-uniform random cell."""
    return open_with_rng(shape, random.Random(seed))


def open_with_rng(shape: Shape, rng: random.Random) -> Placement:
    path = snake_path(shape)
    return Placement(path[rng.randrange(len(path))], 2)


def _far_half(candidates: list[Pos], shape: Shape, last_move: Move | None) -> list[Pos]:
    """Cells on the half of the board the last move slid away from."""
    if last_move is None:
        return candidates
    axis, sign = last_move
    edge = shape[axis] - 1
    return [p for p in candidates if (2 * p[axis] - edge) * (-sign) >= 0]


def paper_placement(board: Board, last_move: Move | None) -> tuple[Placement, str]:
    """The scripted placement rule for a board already in play."""
    if not board.cells:
        raise ValueError("the opening placement is seeded; use adversary_open")
    shape = board.shape
    top = max_tile(board)
    anchor = min(
        (p for p, e in board.cells.items() if e == top),
        key=lambda p: snake_rank(p, shape),
    )
    if top >= 2:
        exp, region, tag = 2, rectilinear_neighbourhood(anchor, shape), "step2"
    else:
        exp, region, tag = 1, diagonal_neighbourhood(anchor, shape), "step3"
    empties = board.empty_cells()  # snake order
    in_region = [p for p in empties if p in region]
    for pool in (_far_half(in_region, shape, last_move), in_region, empties):
        if pool:
            return Placement(pool[0], exp), tag
    raise BoardFullError("no empty cell to place on")


def _fiber_pairs(board: Board) -> int:
    """Mergeable pairs: consecutive occupied equal tiles within a fiber."""
    count = 0
    shape = board.shape
    for axis in range(len(shape)):
        for slots in _fiber_slots(shape, Move(axis, -1)):
            prev = None
            for pos in slots:
                exp = board.cells.get(pos)
                if exp is None:
                    continue
                if exp == prev:
                    count += 1
                    prev = None  # a tile pairs at most once
                else:
                    prev = exp
    return count


def _exact_placement(board: Board, mode: str) -> Placement:
    """Best (cooperative) or worst (adversarial) placement by oracle value.

    Cooperative ties on the reachable exponent (everything ties once the
    ceiling tile exists) are broken by the reachable favourable-chain length,
    which keeps the endgame placements feeding the chain instead of
    deadlocking the board.
    """
    sign = 1 if mode == "cooperative" else -1
    exp_order = (2, 1) if mode == "cooperative" else (1, 2)
    best: Placement | None = None
    best_value: tuple | None = None
    for pos in board.empty_cells():
        for exp in exp_order:
            child = board.with_tile(pos, exp)
            value = (sign * state_value(child, "player", mode),)
            if mode == "cooperative":
                value += (state_value(child, "player", mode, objective="prefix"),)
            if best_value is None or value > best_value:
                best, best_value = Placement(pos, exp), value
    assert best is not None
    return best


def _greedy_placement(board: Board, mode: str) -> Placement:
    """One-ply mergeability greedy for boards beyond the oracle guard."""
    sign = 1 if mode == "cooperative" else -1
    exp_order = (2, 1) if mode == "cooperative" else (1, 2)
    best: Placement | None = None
    best_score: int | None = None
    for pos in board.empty_cells():
        for exp in exp_order:
            score = sign * _fiber_pairs(board.with_tile(pos, exp))
            if best_score is None or score > best_score:
                best, best_score = Placement(pos, exp), score
    assert best is not None
    return best


def adversary_respond(
    board: Board,
    last_player_move: Move | None,
    mode: str,
    rng: random.Random | None = None,
    seed: int | None = None,
) -> StrategyDecision:
    """One placement decision for a board already in play."""
    check_mode(mode)
    empties = board.empty_cells()
    if not empties:
        raise BoardFullError("no empty cell to place on")
    if mode == "paper":
        placement, tag = paper_placement(board, last_player_move)
        return StrategyDecision(rationale=tag, placement=placement)
    if mode == "random":
        if rng is None:
            rng = random.Random(seed)
        pos = empties[rng.randrange(len(empties))]
        exp = SPAWN_EXPONENTS[rng.randrange(2)]
        return StrategyDecision(rationale="fallback", placement=Placement(pos, exp))
    if cell_count(board.shape) <= ORACLE_CELL_LIMIT:
        placement = _exact_placement(board, mode)
    else:
        placement = _greedy_placement(board, mode)
    return StrategyDecision(rationale="fallback", placement=placement)


def mode_label(shape: Shape, mode: str) -> str:
    """Output label; greedy approximations must not pass as exact modes."""
    if mode in ("cooperative", "adversarial") and cell_count(shape) > ORACLE_CELL_LIMIT:
        return f"{mode}-greedy"
    return mode


# ------------------------------------------------------------------- player

def _distance(p: Pos, q: Pos) -> int:
    return sum(abs(a - b) for a, b in zip(p, q))


def player_choose(board: Board, st: PlayerPolicyState) -> StrategyDecision:
    """The chain-building move policy; raises NoLegalMoveError at game over."""
    shape = board.shape
    legal = legal_moves(board)
    if not legal:
        raise NoLegalMoveError("no legal move available")
    path = snake_path(shape)
    n = len(path)
    chain = favourable_prefix(board)
    st.current_m = max(st.current_m, chain)
    protected = path[:chain]

    dest_cache: dict[Move, tuple[dict[Pos, Pos], set[Pos]]] = {}

    def dests(mv: Move) -> tuple[dict[Pos, Pos], set[Pos]]:
        if mv not in dest_cache:
            dest_cache[mv] = tile_destinations(board, mv)
        return dest_cache[mv]

    def disturbs_chain(mv: Move, allow: tuple[Pos, ...] = ()) -> bool:
        dmap, merged = dests(mv)
        for p in protected:
            if p in allow:
                continue
            if dmap.get(p, p) != p or p in merged:
                return True
        return False

    # Roll the chain up: the target tile matches its predecessor, merge them.
    if 0 < chain < n:
        t_pos, p_pos = path[chain], path[chain - 1]
        t_exp = board.cells.get(t_pos)
        if t_exp is not None and t_exp == board.cells.get(p_pos):
            axis = next(a for a in range(len(shape)) if t_pos[a] != p_pos[a])
            mv = Move(axis, 1 if p_pos[axis] > t_pos[axis] else -1)
            if mv in legal and not disturbs_chain(mv, allow=(p_pos, t_pos)):
                if apply_move(board, mv).board_after.cells.get(p_pos) == t_exp + 1:
                    return StrategyDecision(rationale="case3", move=mv)

    safe = [mv for mv in legal if not disturbs_chain(mv)]
    pool = safe if safe else legal

    target = path[chain] if chain < n else None
    want: int | None = None
    if target is not None and chain > 0:
        want = board.cells[path[0]] - chain
        if want < 1:
            want = None  # chain saturated at this head value; only head growth helps

    def landing_move(moves: list[Move], sources: list[Pos], goal: Pos) -> Move | None:
        for mv in moves:
            dmap, merged = dests(mv)
            for src in sources:
                if src not in merged and dmap.get(src) == goal:
                    return mv
        return None

    def approach_move(moves: list[Move], sources: list[Pos], goals: set[Pos]) -> Move | None:
        def dist(p: Pos) -> int:
            return min(_distance(p, g) for g in goals)

        for mv in moves:  # legal-move order doubles as the axis-order tie-break
            dmap, merged = dests(mv)
            for src in sources:
                if src in merged:
                    continue
                if dist(dmap.get(src, src)) < dist(src):
                    return mv
        return None

    def pair_merge_move(moves: list[Move], exp: int) -> Move | None:
        best: Move | None = None
        best_key: tuple | None = None
        for mv in moves:
            for lpos, lexp in apply_move(board, mv).merges:
                if lexp != exp + 1:
                    continue
                if target is None:
                    where = 2
                elif lpos == target:
                    where = 0
                elif lpos in rectilinear_neighbourhood(target, shape):
                    where = 1
                else:
                    where = 2
                key = (where, snake_rank(lpos, shape))
                if best_key is None or key < best_key:
                    best, best_key = mv, key
        return best

    if target is not None:
        rect = rectilinear_neighbourhood(target, shape)
        occupied_rect = [p for p in rect if p in board.cells]
        free_sources = [p for p in occupied_rect if p not in protected]
        t_exp = board.cells.get(target)

        # Case 1: a value-4 tile in the rectilinear region lands on the target.
        if t_exp is None and (want is None or want >= 2):
            fours = [p for p in free_sources if board.cells[p] == 2]
            mv = landing_move(safe, fours, target)
            if mv is not None:
                return StrategyDecision(rationale="case1", move=mv)

        # Grow an occupied target: merge an equal tile into it.
        if t_exp is not None and (want is None or t_exp < want):
            for mv in safe:
                out = apply_move(board, mv)
                if (target, t_exp + 1) in out.merges:
                    tag = "case2" if t_exp == 1 else "case3"
                    return StrategyDecision(rationale=tag, move=mv)

        # Case 2: a value-2 tile sits in the rectilinear region.
        twos_in_rect = [p for p in free_sources if board.cells[p] == 1]
        if twos_in_rect:
            if want == 1 and t_exp is None:
                mv = landing_move(safe, twos_in_rect, target)
                if mv is not None:
                    return StrategyDecision(rationale="case2", move=mv)
            mv = pair_merge_move(safe, 1)
            if mv is not None:
                return StrategyDecision(rationale="case2", move=mv)

        # Case 3: empty rectilinear region; fetch a 4 from the diagonal region.
        if not occupied_rect and t_exp is None:
            fours = [
                p
                for p, e in board.cells.items()
                if e == 2 and p not in protected and p != target and p not in rect
            ]
            if fours:
                mv = approach_move(safe, fours, rect | {target})
                if mv is not None:
                    return StrategyDecision(rationale="case3", move=mv)
            elif not any(e == 2 for e in board.cells.values()):
                mv = pair_merge_move(safe, 1)
                if mv is not None:
                    return StrategyDecision(rationale="case3", move=mv)

    # Chain head missing: herd the strongest tile back to the origin.
    if chain == 0 and board.cells:
        top = max_tile(board)
        carrier = min(
            (p for p, e in board.cells.items() if e == top),
            key=lambda p: snake_rank(p, shape),
        )
        origin = path[0]
        mv = landing_move(pool, [carrier], origin)
        if mv is not None:
            if board.cells[carrier] == 2 and carrier in rectilinear_neighbourhood(origin, shape):
                return StrategyDecision(rationale="case1", move=mv)
            return StrategyDecision(rationale="fallback", move=mv)
        mv = approach_move(pool, [carrier], {origin})
        if mv is not None:
            return StrategyDecision(rationale="fallback", move=mv)

    # Scored fallback: protect the chain, then make material progress.
    def score(mv: Move) -> tuple:
        out = apply_move(board, mv)
        after = out.board_after
        prefix_after = favourable_prefix(after)
        head_after = after.cells.get(path[0], 0)
        target_after = 0
        if target is not None:
            t_after = after.cells.get(target)
            if want is not None and t_after == want:
                target_after = 2
            elif t_after is not None and (want is None or t_after <= want):
                target_after = 1
        return (prefix_after, head_after, target_after, _fiber_pairs(after), len(out.merges))

    best = max(pool, key=lambda mv: (score(mv), -pool.index(mv)))
    return StrategyDecision(rationale="fallback", move=best)

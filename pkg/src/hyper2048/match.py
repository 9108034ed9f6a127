"""Match runner and transcript recording/replaying.

A game strictly alternates turns starting with the computer: each turn is a
single action (a placement or a move) appended to the history together with
the resulting board, so a transcript replays to the exact final state.
Transcripts serialize as line-delimited JSON: a header line followed by one
event per line.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field

from .board import (
    Board,
    apply_move,
    board_from_json,
    board_to_json,
    is_game_over,
    max_tile,
)
from .geometry import Move, Shape, cell_count, validate_shape
from .strategies import (
    PlayerPolicyState,
    StrategyDecision,
    adversary_respond,
    check_mode,
    mode_label,
    open_with_rng,
    player_choose,
)

COMPUTER = "computer"
PLAYER = "player"

POLICY_VERSION = "1"

# The games have no inherent length bound; the cap keeps every run finite.
TURN_CAP_FACTOR = 10


class GameOverError(RuntimeError):
    pass


class ReplayError(ValueError):
    def __init__(self, index: int, message: str):
        super().__init__(f"event {index}: {message}")
        self.index = index


class BoardMismatchError(ReplayError):
    pass


@dataclass
class GameState:
    board: Board
    to_act: str
    history: list[dict]
    seed: int
    mode: str
    policy: PlayerPolicyState
    rng: random.Random
    last_move: Move | None = None
    turn: int = 0


@dataclass
class Transcript:
    header: dict
    events: list[dict] = field(default_factory=list)

    def to_jsonl(self) -> str:
        lines = [json.dumps(self.header, sort_keys=True)]
        lines.extend(json.dumps(ev, sort_keys=True) for ev in self.events)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_jsonl(cls, text: str) -> "Transcript":
        lines = [line for line in text.splitlines() if line.strip()]
        if not lines:
            raise ValueError("empty transcript")
        return cls(json.loads(lines[0]), [json.loads(line) for line in lines[1:]])


def default_turn_cap(shape: Shape) -> int:
    return TURN_CAP_FACTOR * cell_count(shape) ** 2


def new_game(shape: Shape, mode: str, seed: int) -> GameState:
    shape = validate_shape(shape)
    check_mode(mode)
    return GameState(
        board=Board.empty(shape),
        to_act=COMPUTER,
        history=[],
        seed=seed,
        mode=mode,
        policy=PlayerPolicyState(),
        rng=random.Random(seed),
    )


def run_policy_turn(state: GameState, mode: str | None = None) -> GameState:
    """Apply one turn (a single actor's action) using the built-in policies."""
    mode = mode or state.mode
    board = state.board
    if is_game_over(board):
        raise GameOverError("the game is over")
    if state.to_act == COMPUTER:
        if board.cells:
            decision = adversary_respond(board, state.last_move, mode, rng=state.rng)
        else:
            decision = StrategyDecision(rationale="step1", placement=open_with_rng(board.shape, state.rng))
        placement = decision.placement
        state.board = board.with_tile(placement.pos, placement.exp)
        action = {"type": "place", "pos": list(placement.pos), "exp": placement.exp}
        state.to_act = PLAYER
    else:
        decision = player_choose(board, state.policy)
        state.board = apply_move(board, decision.move).board_after
        state.last_move = decision.move
        action = {"type": "move", "axis": decision.move.axis, "sign": decision.move.sign}
        state.to_act = COMPUTER
    state.turn += 1
    state.history.append(
        {
            "turn": state.turn,
            "actor": COMPUTER if state.to_act == PLAYER else PLAYER,
            "action": action,
            "rationale": decision.rationale,
            "board_after": board_to_json(state.board),
        }
    )
    return state


def run_match(
    shape: Shape,
    mode: str,
    seed: int,
    max_turns: int | None = None,
) -> Transcript:
    """Play a full match; ends at game over, the value ceiling, or the cap."""
    shape = validate_shape(shape)
    state = new_game(shape, mode, seed)
    cap = max_turns if max_turns is not None else default_turn_cap(shape)
    ceiling = cell_count(shape) + 1
    while True:
        if is_game_over(state.board):
            outcome = "game_over"
            break
        if (max_tile(state.board) or 0) >= ceiling:
            outcome = "ceiling"
            break
        if state.turn >= cap:
            outcome = "turn_cap"
            break
        run_policy_turn(state)
    header = {
        "shape": list(shape),
        "mode": mode_label(shape, mode),
        "seed": seed,
        "policy_version": POLICY_VERSION,
        "max_turns": cap,
        "outcome": outcome,
    }
    return Transcript(header, state.history)


def replay_transcript(transcript: Transcript) -> GameState:
    """Re-derive every board from the actions, validating each step."""
    shape = validate_shape(transcript.header["shape"])
    board = Board.empty(shape)
    last_move: Move | None = None
    for i, event in enumerate(transcript.events):
        expected = COMPUTER if i % 2 == 0 else PLAYER
        if event["actor"] != expected:
            raise ReplayError(i, f"expected {expected} to act, got {event['actor']}")
        action = event["action"]
        if expected == COMPUTER:
            if action["type"] != "place":
                raise ReplayError(i, "computer turns must place a tile")
            pos = tuple(action["pos"])
            exp = action["exp"]
            if exp not in (1, 2):
                raise ReplayError(i, f"spawn exponent must be 1 or 2, got {exp}")
            if board.cells.get(pos) is not None:
                raise ReplayError(i, f"cell {pos} is occupied")
            board = board.with_tile(pos, exp)
        else:
            if action["type"] != "move":
                raise ReplayError(i, "player turns must move")
            move = Move(action["axis"], action["sign"])
            outcome = apply_move(board, move)
            if not outcome.changed:
                raise ReplayError(i, f"move {move} changes nothing")
            board = outcome.board_after
            last_move = move
        if board_to_json(board) != event["board_after"]:
            raise BoardMismatchError(i, "recorded board does not match the replayed one")
    seed = transcript.header.get("seed", 0)
    mode = transcript.header.get("mode", "paper").removesuffix("-greedy")
    return GameState(
        board=board,
        to_act=COMPUTER if len(transcript.events) % 2 == 0 else PLAYER,
        history=list(transcript.events),
        seed=seed,
        mode=mode,
        policy=PlayerPolicyState(),
        rng=random.Random(seed),
        last_move=last_move,
        turn=len(transcript.events),
    )


def prefix_trajectory(transcript: Transcript) -> list[int]:
    """High-water mark of the favourable chain length after each event.

    The raw chain length necessarily dips while the chain rolls up into its
    head, so progress is reported as a running maximum.
    """
    from .board import favourable_prefix

    best = 0
    out = []
    for event in transcript.events:
        board = board_from_json(event["board_after"])
        best = max(best, favourable_prefix(board))
        out.append(best)
    return out


def raw_prefix_trajectory(transcript: Transcript) -> list[int]:
    from .board import favourable_prefix

    return [favourable_prefix(board_from_json(ev["board_after"])) for ev in transcript.events]

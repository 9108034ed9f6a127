"""d-dimensional 2048: geometry, move mechanics, policies, oracle, and harness."""

from .board import (
    Board,
    MoveOutcome,
    apply_move,
    board_from_json,
    board_to_json,
    favourable_prefix,
    is_game_over,
    legal_moves,
    max_tile,
    tile_destinations,
)
from .geometry import (
    Move,
    Pos,
    Shape,
    ShapeError,
    cell_count,
    diagonal_neighbourhood,
    moves_for,
    positions,
    prev_tile,
    rectilinear_neighbourhood,
    snake_index,
    snake_path,
    snake_rank,
    validate_shape,
)
from .match import (
    GameOverError,
    GameState,
    Transcript,
    new_game,
    replay_transcript,
    run_match,
    run_policy_turn,
)
from .oracle import (
    ORACLE_CELL_LIMIT,
    OracleResult,
    reachable_max,
    replay,
    unreachability_check,
)
from .reports import Report, verify_claims
from .strategies import (
    BoardFullError,
    NoLegalMoveError,
    Placement,
    PlayerPolicyState,
    StrategyDecision,
    adversary_open,
    adversary_respond,
    player_choose,
)

__all__ = [name for name in dir() if not name.startswith("_")]

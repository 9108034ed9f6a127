"""Claim verification runs and their report format.

A report aggregates a batch of seeded matches on one shape and compares the
observed maxima against the 2**(cell_count+1) ceiling; on shapes small
enough for exact search it also cross-checks the oracle against the closed
formula and attaches a witness when they disagree.
"""

from __future__ import annotations

import json
import statistics
from collections import Counter
from dataclasses import dataclass, field

from .board import board_from_json, max_tile
from .geometry import Shape, cell_count, validate_shape
from .match import Transcript, prefix_trajectory, run_match
from .oracle import ORACLE_CELL_LIMIT, OracleResult, reachable_max
from .strategies import check_mode, mode_label


@dataclass
class GameRow:
    seed: int
    final_max_exponent: int
    turns: int
    outcome: str
    prefix_trajectory: list[int]
    case_tags: dict[str, int]

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "final_max_exponent": self.final_max_exponent,
            "turns": self.turns,
            "outcome": self.outcome,
            "prefix_trajectory": self.prefix_trajectory,
            "case_tags": self.case_tags,
        }


@dataclass
class Report:
    shape: Shape
    mode: str
    bound_exponent: int
    rows: list[GameRow]
    aggregate: dict
    oracle: OracleResult | None = None
    mismatches: list[str] = field(default_factory=list)

    @property
    def claims_ok(self) -> bool:
        return not self.mismatches

    def to_json(self) -> dict:
        return {
            "shape": list(self.shape),
            "mode": self.mode,
            "bound_exponent": self.bound_exponent,
            "rows": [row.to_json() for row in self.rows],
            "aggregate": self.aggregate,
            "oracle": self.oracle.to_json() if self.oracle else None,
            "mismatches": self.mismatches,
            "claims_ok": self.claims_ok,
        }

    def to_json_text(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)


def analyze_transcript(transcript: Transcript, seed: int) -> GameRow:
    if transcript.events:
        final_board = board_from_json(transcript.events[-1]["board_after"])
        final_max = max_tile(final_board) or 0
    else:
        final_max = 0
    tags = Counter(ev["rationale"] for ev in transcript.events if ev["actor"] == "player")
    return GameRow(
        seed=seed,
        final_max_exponent=final_max,
        turns=len(transcript.events),
        outcome=transcript.header.get("outcome", "unknown"),
        prefix_trajectory=prefix_trajectory(transcript),
        case_tags=dict(tags),
    )


def aggregate_rows(rows: list[GameRow]) -> dict:
    finals = [row.final_max_exponent for row in rows]
    return {
        "games": len(rows),
        "min_final_exponent": min(finals) if finals else 0,
        "median_final_exponent": statistics.median(finals) if finals else 0,
        "max_final_exponent": max(finals) if finals else 0,
    }


def verify_claims(
    shape: Shape,
    mode: str,
    seeds: list[int],
    max_turns: int | None = None,
) -> Report:
    shape = validate_shape(shape)
    check_mode(mode)
    bound = cell_count(shape) + 1
    rows = []
    mismatches: list[str] = []
    for seed in seeds:
        transcript = run_match(shape, mode, seed, max_turns=max_turns)
        row = analyze_transcript(transcript, seed)
        rows.append(row)
        if row.final_max_exponent > bound:
            mismatches.append(
                f"seed {seed}: final exponent {row.final_max_exponent} exceeds the ceiling {bound}"
            )
    oracle = None
    if cell_count(shape) <= ORACLE_CELL_LIMIT and mode in ("cooperative", "adversarial", "paper"):
        oracle = reachable_max(shape, mode)
        if oracle.max_exponent > bound:
            mismatches.append(
                f"oracle: reachable exponent {oracle.max_exponent} exceeds the ceiling {bound}"
            )
        if mode == "cooperative" and oracle.max_exponent != bound:
            mismatches.append(
                f"oracle: reachable exponent {oracle.max_exponent} != formula exponent {bound}"
            )
        for row in rows:
            if row.final_max_exponent > oracle.max_exponent:
                mismatches.append(
                    f"seed {row.seed}: observed {row.final_max_exponent} exceeds oracle {oracle.max_exponent}"
                )
    return Report(
        shape=shape,
        mode=mode_label(shape, mode),
        bound_exponent=bound,
        rows=rows,
        aggregate=aggregate_rows(rows),
        oracle=oracle,
        mismatches=mismatches,
    )

"""Command-line interface.

Verbs: verify, oracle, match, replay, render, serve.  Shapes are written
AxBxC (a bare integer is a 1-D board); seed batches accept either a comma
list or an inclusive range like 0..49.  Exit codes: 0 success, 2 claim
mismatch from verify, 1 usage or I/O errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .board import board_from_json, max_tile
from .geometry import ShapeError, validate_shape
from .match import Transcript, replay_transcript, run_match
from .oracle import reachable_max
from .render import render_board
from .reports import verify_claims
from .strategies import MODES


def parse_shape(text: str) -> tuple[int, ...]:
    try:
        return validate_shape(int(part) for part in text.lower().split("x"))
    except (ValueError, ShapeError) as exc:
        raise argparse.ArgumentTypeError(f"bad shape {text!r}: {exc}") from None


def parse_seeds(text: str) -> list[int]:
    try:
        if ".." in text:
            lo, hi = text.split("..")
            return list(range(int(lo), int(hi) + 1))
        return [int(part) for part in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad seed range {text!r}; use N, N,M,... or N..M") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hyper2048", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run seeded matches and check the claimed maxima")
    p.add_argument("--shape", type=parse_shape, required=True)
    p.add_argument("--mode", choices=MODES, default="cooperative")
    p.add_argument("--seeds", type=parse_seeds, default=list(range(20)))
    p.add_argument("--max-turns", type=int, default=None)
    p.add_argument("--out", type=Path, default=None, help="write the JSON report here")

    p = sub.add_parser("oracle", help="exhaustive search on a small shape")
    p.add_argument("--shape", type=parse_shape, required=True)
    p.add_argument("--mode", choices=("cooperative", "adversarial", "paper"), default="cooperative")
    p.add_argument("--cap", type=int, default=None, help="state budget for the search")

    p = sub.add_parser("match", help="play one seeded match and write its transcript")
    p.add_argument("--shape", type=parse_shape, required=True)
    p.add_argument("--mode", choices=MODES, default="paper")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-turns", type=int, default=None)
    p.add_argument("--transcript", type=Path, default=None, help="output JSONL path (default stdout)")

    p = sub.add_parser("replay", help="validate a transcript and show its final board")
    p.add_argument("--transcript", type=Path, required=True)

    p = sub.add_parser("render", help="ASCII-render one turn of a transcript")
    p.add_argument("--transcript", type=Path, required=True)
    p.add_argument("--turn", type=int, required=True, help="1-based turn number, 0 for the empty board")

    p = sub.add_parser("serve", help="start the interactive game service")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--transcript-dir", type=Path, default=None)
    return parser


def _cmd_verify(args) -> int:
    report = verify_claims(args.shape, args.mode, args.seeds, max_turns=args.max_turns)
    text = report.to_json_text()
    if args.out:
        args.out.write_text(text + "\n")
    else:
        print(text)
    if not report.claims_ok:
        for line in report.mismatches:
            print(f"MISMATCH: {line}", file=sys.stderr)
        return 2
    return 0


def _cmd_oracle(args) -> int:
    kwargs = {} if args.cap is None else {"cap": args.cap}
    result = reachable_max(args.shape, args.mode, **kwargs)
    print(json.dumps(result.to_json(), sort_keys=True, indent=2))
    return 0


def _cmd_match(args) -> int:
    transcript = run_match(args.shape, args.mode, args.seed, max_turns=args.max_turns)
    text = transcript.to_jsonl()
    if args.transcript:
        args.transcript.write_text(text)
        print(f"wrote {len(transcript.events)} events to {args.transcript}")
    else:
        sys.stdout.write(text)
    return 0


def _cmd_replay(args) -> int:
    transcript = Transcript.from_jsonl(args.transcript.read_text())
    state = replay_transcript(transcript)
    print(f"transcript is legal: {len(transcript.events)} events, outcome {transcript.header.get('outcome')}")
    print(f"final max exponent: {max_tile(state.board)}")
    print(render_board(state.board))
    return 0


def _cmd_render(args) -> int:
    transcript = Transcript.from_jsonl(args.transcript.read_text())
    if not 0 <= args.turn <= len(transcript.events):
        print(f"turn {args.turn} out of range 0..{len(transcript.events)}", file=sys.stderr)
        return 1
    shape = validate_shape(transcript.header["shape"])
    if args.turn == 0:
        from .board import Board

        board = Board.empty(shape)
    else:
        board = board_from_json(transcript.events[args.turn - 1]["board_after"])
    print(render_board(board))
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(transcript_dir=args.transcript_dir)
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code not in (0, None) else 0
    handlers = {
        "verify": _cmd_verify,
        "oracle": _cmd_oracle,
        "match": _cmd_match,
        "replay": _cmd_replay,
        "render": _cmd_render,
        "serve": _cmd_serve,
    }
    try:
        return handlers[args.command](args)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""Command-line verbs and exit codes."""

import json

import pytest

from hyper2048.cli import main, parse_seeds, parse_shape


class TestParsers:
    def test_shape_syntax(self):
        assert parse_shape("4x4") == (4, 4)
        assert parse_shape("2x3x4") == (2, 3, 4)
        assert parse_shape("5") == (5,)

    def test_bad_shape(self):
        import argparse

        with pytest.raises(argparse.ArgumentTypeError):
            parse_shape("4xfour")
        with pytest.raises(argparse.ArgumentTypeError):
            parse_shape("0x4")

    def test_seed_specs(self):
        assert parse_seeds("0..3") == [0, 1, 2, 3]
        assert parse_seeds("7") == [7]
        assert parse_seeds("1,5,9") == [1, 5, 9]


class TestVerbs:
    def test_oracle_verb(self, capsys):
        assert main(["oracle", "--shape", "2x2", "--mode", "cooperative"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["max_exponent"] == 5

    def test_verify_verb_writes_report(self, tmp_path, capsys):
        out = tmp_path / "report.json"
        code = main(
            ["verify", "--shape", "2x2", "--mode", "cooperative", "--seeds", "0..4", "--out", str(out)]
        )
        assert code == 0
        doc = json.loads(out.read_text())
        assert doc["claims_ok"] is True
        assert doc["aggregate"]["max_final_exponent"] == 5

    def test_match_replay_render_round_trip(self, tmp_path, capsys):
        transcript = tmp_path / "game.jsonl"
        assert main(["match", "--shape", "2x2", "--mode", "paper", "--seed", "7",
                     "--transcript", str(transcript)]) == 0
        capsys.readouterr()
        assert main(["replay", "--transcript", str(transcript)]) == 0
        replay_out = capsys.readouterr().out
        assert "transcript is legal" in replay_out
        assert main(["render", "--transcript", str(transcript), "--turn", "1"]) == 0
        render_out = capsys.readouterr().out
        assert "4" in render_out  # the opening tile

    def test_render_3d_slices(self, tmp_path, capsys):
        transcript = tmp_path / "game3d.jsonl"
        main(["match", "--shape", "2x2x2", "--mode", "random", "--seed", "1",
              "--max-turns", "6", "--transcript", str(transcript)])
        capsys.readouterr()
        assert main(["render", "--transcript", str(transcript), "--turn", "3"]) == 0
        out = capsys.readouterr().out
        assert "[axis2=0]" in out and "[axis2=1]" in out

    def test_render_turn_out_of_range(self, tmp_path, capsys):
        transcript = tmp_path / "game.jsonl"
        main(["match", "--shape", "2x2", "--mode", "paper", "--seed", "0",
              "--max-turns", "2", "--transcript", str(transcript)])
        assert main(["render", "--transcript", str(transcript), "--turn", "99"]) == 1

    def test_missing_file_is_io_error(self, tmp_path):
        assert main(["replay", "--transcript", str(tmp_path / "missing.jsonl")]) == 1

    def test_bad_usage_exits_1(self):
        assert main(["match", "--shape", "nonsense"]) == 1

    def test_verify_mismatch_exits_2(self, monkeypatch, capsys):
        import hyper2048.cli as cli
        from hyper2048.reports import Report

        def fake_verify(shape, mode, seeds, max_turns=None):
            return Report(
                shape=shape, mode=mode, bound_exponent=5, rows=[],
                aggregate={"games": 0}, oracle=None,
                mismatches=["oracle: reachable exponent 4 != formula exponent 5"],
            )

        monkeypatch.setattr(cli, "verify_claims", fake_verify)
        assert main(["verify", "--shape", "2x2", "--seeds", "0"]) == 2
        assert "MISMATCH" in capsys.readouterr().err

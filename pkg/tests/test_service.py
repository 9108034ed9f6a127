"""Session service: REST actions, hints, and the event stream."""

import pytest
from fastapi.testclient import TestClient

from hyper2048.service import create_app


@pytest.fixture()
def client():
    return TestClient(create_app())


def make_game(client, **overrides):
    body = {"shape": [4, 4], "human_role": "player", "mode": "paper", "seed": 0}
    body.update(overrides)
    response = client.post("/games", json=body)
    assert response.status_code == 201, response.text
    return response.json()


class TestCreate:
    def test_player_session_opens_with_one_four(self, client):
        doc = make_game(client)
        assert doc["to_act"] == "player"
        assert len(doc["board"]["cells"]) == 1
        assert doc["board"]["cells"][0]["exp"] == 2
        assert doc["version"] == 1

    def test_computer_session_awaits_the_opening_placement(self, client):
        doc = make_game(client, shape=[2, 2, 2], human_role="computer")
        assert doc["to_act"] == "computer"
        assert doc["board"]["cells"] == []
        assert doc["version"] == 0

    def test_four_dimensions_rejected(self, client):
        response = client.post("/games", json={"shape": [4, 4, 4, 4]})
        assert response.status_code == 400
        assert response.json()["error"] == "unsupported-dimension"

    def test_bad_shape_rejected(self, client):
        response = client.post("/games", json={"shape": [0, 4]})
        assert response.status_code == 400
        assert response.json()["error"] == "invalid-shape"

    def test_observer_session_autoplays(self, client):
        doc = make_game(client, shape=[2, 2], human_role="observer", mode="cooperative")
        assert doc["version"] > 0
        assert doc["turn"] == doc["version"]

    def test_unknown_session_is_404(self, client):
        response = client.get("/games/nope")
        assert response.status_code == 404
        assert response.json()["error"] == "session-not-found"


class TestMoves:
    def test_legal_move_triggers_the_adversary_reply(self, client):
        doc = make_game(client)
        moved = None
        for axis in (0, 1):
            for sign in (-1, 1):
                response = client.post(f"/games/{doc['id']}/move", json={"axis": axis, "sign": sign})
                if response.status_code == 200:
                    moved = response.json()
                    break
            if moved:
                break
        assert moved is not None
        assert moved["version"] == 3  # opening + human move + adversary placement
        assert moved["to_act"] == "player"
        assert len(moved["board"]["cells"]) == 2

    def test_noop_move_is_illegal(self, client):
        doc = make_game(client, shape=[2, 2], seed=0)
        cells = doc["board"]["cells"]
        pos = tuple(cells[0]["pos"])
        # Slide toward the tile's own corner on both axes: one must be a no-op.
        rejected = False
        for axis in (0, 1):
            sign = -1 if pos[axis] == 0 else 1
            response = client.post(f"/games/{doc['id']}/move", json={"axis": axis, "sign": sign})
            if response.status_code == 409:
                assert response.json()["error"] == "illegal-action"
                rejected = True
        assert rejected

    def test_move_in_computer_session_is_not_your_turn(self, client):
        doc = make_game(client, human_role="computer", shape=[2, 2])
        response = client.post(f"/games/{doc['id']}/move", json={"axis": 0, "sign": 1})
        assert response.status_code == 409
        assert response.json()["error"] == "not-your-turn"

    def test_malformed_move_is_400(self, client):
        doc = make_game(client)
        response = client.post(f"/games/{doc['id']}/move", json={"axis": 0})
        assert response.status_code == 400


class TestPlacements:
    def test_placement_triggers_the_player_reply(self, client):
        doc = make_game(client, human_role="computer", shape=[2, 2])
        response = client.post(f"/games/{doc['id']}/place", json={"pos": [0, 1], "exp": 2})
        assert response.status_code == 200
        out = response.json()
        assert out["version"] == 2  # human placement + machine move
        assert out["to_act"] == "computer"

    def test_occupied_cell_is_illegal(self, client):
        doc = make_game(client, human_role="computer", shape=[2, 2])
        client.post(f"/games/{doc['id']}/place", json={"pos": [0, 1], "exp": 2})
        state = client.get(f"/games/{doc['id']}").json()
        occupied = state["board"]["cells"][0]["pos"]
        response = client.post(f"/games/{doc['id']}/place", json={"pos": occupied, "exp": 1})
        assert response.status_code == 409
        assert response.json()["error"] == "illegal-action"

    def test_bad_exponent_is_illegal(self, client):
        doc = make_game(client, human_role="computer", shape=[2, 2])
        response = client.post(f"/games/{doc['id']}/place", json={"pos": [0, 0], "exp": 3})
        assert response.status_code == 409


class TestHints:
    def test_player_hint_matches_the_policy(self, client):
        from hyper2048.board import board_from_json
        from hyper2048.strategies import PlayerPolicyState, player_choose

        doc = make_game(client, shape=[2, 2])
        hint = client.get(f"/games/{doc['id']}/hint").json()
        board = board_from_json(doc["board"])
        decision = player_choose(board, PlayerPolicyState())
        assert hint["move"] == {"axis": decision.move.axis, "sign": decision.move.sign}
        assert hint["rationale"] == decision.rationale

    def test_hint_is_idempotent(self, client):
        doc = make_game(client, shape=[2, 2])
        first = client.get(f"/games/{doc['id']}/hint").json()
        second = client.get(f"/games/{doc['id']}/hint").json()
        assert first == second
        assert client.get(f"/games/{doc['id']}").json()["version"] == doc["version"]

    def test_computer_hint_matches_the_adversary(self, client):
        doc = make_game(client, human_role="computer", shape=[2, 2], mode="paper")
        hint = client.get(f"/games/{doc['id']}/hint").json()
        assert "place" in hint
        assert hint["place"]["exp"] == 2  # opening tile is always a 4
        assert hint["rationale"] == "step1"

    def test_finished_game_hint_is_game_over(self, client):
        doc = make_game(client, shape=[2, 2], human_role="observer", mode="adversarial")
        response = client.get(f"/games/{doc['id']}/hint")
        assert response.status_code == 409
        assert response.json()["error"] == "game-over"


class TestStreamAndResync:
    def test_snapshot_then_ordered_events(self, client):
        doc = make_game(client, shape=[2, 2], human_role="observer", mode="cooperative")
        with client.websocket_connect(f"/games/{doc['id']}/stream") as ws:
            snapshot = ws.receive_json()
            assert snapshot["type"] == "snapshot"
            versions = []
            while True:
                msg = ws.receive_json()
                if msg["type"] == "over":
                    break
                assert msg["type"] == "event"
                versions.append(msg["version"])
            assert versions == list(range(1, doc["version"] + 1))

    def test_resync_from_a_version(self, client):
        doc = make_game(client, shape=[2, 2], human_role="observer", mode="cooperative")
        since = doc["version"] - 2
        with client.websocket_connect(f"/games/{doc['id']}/stream?since={since}") as ws:
            snapshot = ws.receive_json()
            assert snapshot["session"]["version"] == doc["version"]
            first = ws.receive_json()
            assert first["version"] == since + 1

    def test_unknown_session_streams_an_error(self, client):
        with client.websocket_connect("/games/ghost/stream") as ws:
            msg = ws.receive_json()
            assert msg["type"] == "error"
            assert msg["error"] == "session-not-found"

    def test_events_endpoint_supports_polling(self, client):
        doc = make_game(client, shape=[2, 2], human_role="observer", mode="cooperative")
        out = client.get(f"/games/{doc['id']}/events", params={"since": 0}).json()
        assert out["version"] == doc["version"]
        assert len(out["events"]) == doc["version"]
        tail = client.get(f"/games/{doc['id']}/events", params={"since": doc["version"] - 1}).json()
        assert len(tail["events"]) == 1


class TestSnakeDebugEndpoint:
    def test_snake_path_matches_the_engine(self, client):
        from hyper2048.geometry import snake_path

        doc = make_game(client, shape=[3, 3])
        out = client.get(f"/games/{doc['id']}/snake").json()
        assert [tuple(p) for p in out["path"]] == list(snake_path((3, 3)))


class TestConcurrency:
    def test_hammered_session_stays_serialized(self, client):
        import threading

        doc = make_game(client, shape=[3, 3], mode="random", seed=2)
        sid = doc["id"]
        errors = []

        def play():
            try:
                for _ in range(15):
                    state = client.get(f"/games/{sid}").json()
                    if state["over"]:
                        return
                    for axis in (0, 1):
                        for sign in (-1, 1):
                            response = client.post(
                                f"/games/{sid}/move", json={"axis": axis, "sign": sign}
                            )
                            assert response.status_code in (200, 409), response.text
            except Exception as exc:  # surfaced after join
                errors.append(exc)

        threads = [threading.Thread(target=play) for _ in range(4)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert not errors
        final = client.get(f"/games/{sid}").json()
        events = client.get(f"/games/{sid}/events").json()["events"]
        assert final["version"] == len(events)
        assert [ev["version"] for ev in events] == list(range(1, len(events) + 1))
        # The recorded game replays cleanly: no interleaved mutation corrupted it.
        from hyper2048.match import Transcript, replay_transcript

        header = {"shape": final["shape"], "mode": final["mode"], "seed": final["seed"]}
        replay_transcript(Transcript(header, events))


class TestTranscriptPersistence:
    def test_session_transcript_parses_as_harness_jsonl(self, tmp_path):
        from hyper2048.match import Transcript, replay_transcript

        client = TestClient(create_app(transcript_dir=tmp_path))
        doc = make_game(client, shape=[2, 2], human_role="observer", mode="cooperative")
        text = (tmp_path / f"{doc['id']}.jsonl").read_text()
        transcript = Transcript.from_jsonl(text)
        state = replay_transcript(transcript)
        assert state.turn == doc["version"]

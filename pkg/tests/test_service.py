"""Session service: tokens, hidden state, determinism, concurrency."""
import json
import math
import threading

import pytest
from fastapi.testclient import TestClient

from qgames.service import create_app

from conftest import assert_no_hidden_quantum_data

S3 = 1.0 / math.sqrt(3.0)


@pytest.fixture
def client():
    return TestClient(create_app())


def make_session(client, game="three-box", human=("bob",), seed=7, mode="series",
                 config=None, opponents=None):
    resp = client.post("/api/v1/sessions", json={
        "game": game,
        "config": config or {},
        "human_roles": list(human),
        "seed": seed,
        "mode": mode,
        "opponents": opponents or {},
    })
    assert resp.status_code == 201, resp.text
    return resp.json()


def bob_headers(created):
    return {"X-Role-Token": created["tokens"]["bob"]}


class TestSessionLifecycle:
    def test_create_returns_tokens_for_humans_only(self, client):
        created = make_session(client)
        assert set(created["tokens"]) == {"bob"}
        assert created["session_id"]

    def test_two_humans(self, client):
        created = make_session(client, human=("alice", "bob"))
        assert set(created["tokens"]) == {"alice", "bob"}
        view = client.get(f"/api/v1/sessions/{created['session_id']}/view",
                          headers={"X-Role-Token": created["tokens"]["alice"]})
        assert view.status_code == 200
        assert view.json()["turn"] == "alice"  # engine no longer auto-plays her

    def test_unknown_session_404(self, client):
        resp = client.get("/api/v1/sessions/nope/view",
                          headers={"X-Role-Token": "whatever"})
        assert resp.status_code == 404

    def test_bad_token_403(self, client):
        created = make_session(client)
        resp = client.get(f"/api/v1/sessions/{created['session_id']}/view",
                          headers={"X-Role-Token": "forged"})
        assert resp.status_code == 403

    def test_bad_game_422(self, client):
        resp = client.post("/api/v1/sessions", json={
            "game": "tic-tac-toe", "human_roles": ["bob"]})
        assert resp.status_code == 422

    def test_bad_role_422(self, client):
        resp = client.post("/api/v1/sessions", json={
            "game": "three-box", "human_roles": ["eve"]})
        assert resp.status_code == 422


class TestPlayingBob:
    def test_engine_alice_prepares_then_waits_for_bob(self, client):
        created = make_session(client)
        view = client.get(f"/api/v1/sessions/{created['session_id']}/view",
                          headers=bob_headers(created)).json()
        assert view["turn"] == "bob"
        assert view["view"]["stage"] == 1
        legal = {m["move"] for m in view["view"]["legal_moves"]}
        assert legal == {"open", "inspect_both"}

    def test_bob_opens_a_box_and_sees_his_outcome(self, client):
        created = make_session(client)
        resp = client.post(
            f"/api/v1/sessions/{created['session_id']}/moves",
            json={"move": {"move": "open", "box": "A"}},
            headers=bob_headers(created))
        assert resp.status_code == 200
        payload = resp.json()
        # Series mode: the engine finished the trial and dealt the next one.
        assert payload["trial_index"] == 1
        assert payload["scoreboard"]["trials"] == 1

    def test_stale_trial_index_is_rejected(self, client):
        created = make_session(client)
        sid = created["session_id"]
        first = client.post(
            f"/api/v1/sessions/{sid}/moves",
            json={"move": {"move": "open", "box": "A"}, "trial_index": 0},
            headers=bob_headers(created))
        assert first.status_code == 200
        second = client.post(
            f"/api/v1/sessions/{sid}/moves",
            json={"move": {"move": "open", "box": "A"}, "trial_index": 0},
            headers=bob_headers(created))
        assert second.status_code == 409

    def test_malformed_move_422(self, client):
        created = make_session(client)
        resp = client.post(
            f"/api/v1/sessions/{created['session_id']}/moves",
            json={"move": {"move": "open", "box": "Q"}},
            headers=bob_headers(created))
        assert resp.status_code == 422

    def test_unparseable_move_422(self, client):
        created = make_session(client)
        resp = client.post(
            f"/api/v1/sessions/{created['session_id']}/moves",
            json={"move": {"move": "levitate"}},
            headers=bob_headers(created))
        assert resp.status_code == 422

    def test_series_scoreboard_quantum_alice_never_loses(self, client):
        created = make_session(client, seed=11)
        sid = created["session_id"]
        for _ in range(50):
            resp = client.post(
                f"/api/v1/sessions/{sid}/moves",
                json={"move": {"move": "open", "box": "A"}},
                headers=bob_headers(created))
            assert resp.status_code == 200
        score = resp.json()["scoreboard"]
        assert score["trials"] == 50
        assert score["wins_among_accepted"] == score["accepted"]
        assert score["accepted"] > 0

    def test_meyer_human_bob_under_full_dephasing(self, client):
        created = make_session(client, game="meyer-coin", seed=13,
                               config={"dephasing_p": 1.0})
        sid = created["session_id"]
        wins = 0
        n = 120
        for _ in range(n):
            resp = client.post(
                f"/api/v1/sessions/{sid}/moves",
                json={"move": {"move": "flip"}},
                headers=bob_headers(created))
            assert resp.status_code == 200
        score = resp.json()["scoreboard"]
        assert score["trials"] == n
        # Full dephasing: quantum alice wins about half of the trials.
        rate = score["wins_among_accepted"] / score["trials"]
        assert 0.3 < rate < 0.7


class TestInformationBoundary:
    def test_bob_payloads_never_carry_amplitudes(self, client):
        created = make_session(client, seed=17)
        sid = created["session_id"]
        for _ in range(30):
            view = client.get(f"/api/v1/sessions/{sid}/view",
                              headers=bob_headers(created)).json()
            assert_no_hidden_quantum_data(view["view"])
            resp = client.post(
                f"/api/v1/sessions/{sid}/moves",
                json={"move": {"move": "open", "box": "B"}},
                headers=bob_headers(created))
            assert_no_hidden_quantum_data(resp.json()["view"])

    def test_byte_equal_responses_for_globally_rephased_hidden_state(self, client):
        # Two sessions whose hidden preparations differ by a global phase:
        # physically identical, textually different amplitudes.  Every byte
        # Bob receives must match across the pair.
        flip = [[-S3, 0.0], [-S3, 0.0], [-S3, 0.0]]
        plain = [[S3, 0.0], [S3, 0.0], [S3, 0.0]]
        payload_streams = []
        for amps in (plain, flip):
            created = make_session(
                client, seed=23,
                opponents={"alice": {"name": "quantum", "prep_amps": amps}})
            sid = created["session_id"]
            stream = []
            for _ in range(25):
                view = client.get(f"/api/v1/sessions/{sid}/view",
                                  headers=bob_headers(created))
                body = view.json()
                body.pop("session_id")
                stream.append(json.dumps(body, sort_keys=True))
                resp = client.post(
                    f"/api/v1/sessions/{sid}/moves",
                    json={"move": {"move": "open", "box": "A"}},
                    headers=bob_headers(created))
                body = resp.json()
                body.pop("session_id")
                stream.append(json.dumps(body, sort_keys=True))
            payload_streams.append(stream)
        assert payload_streams[0] == payload_streams[1]

    def test_fuzzed_sessions_leak_nothing(self, client):
        import numpy as np
        np_rng = np.random.default_rng(99)
        for case in range(200):
            created = make_session(client, seed=int(np_rng.integers(1 << 20)),
                                   mode="series")
            sid = created["session_id"]
            for _ in range(int(np_rng.integers(1, 4))):
                box = "A" if np_rng.random() < 0.5 else "B"
                move = {"move": "open", "box": box} \
                    if np_rng.random() < 0.8 else {"move": "inspect_both"}
                resp = client.post(f"/api/v1/sessions/{sid}/moves",
                                   json={"move": move},
                                   headers=bob_headers(created))
                assert resp.status_code == 200
                assert_no_hidden_quantum_data(resp.json()["view"])


class TestDeterminism:
    def _transcript(self, client, seed, moves):
        created = make_session(client, seed=seed, mode="series")
        sid = created["session_id"]
        for move in moves:
            resp = client.post(f"/api/v1/sessions/{sid}/moves",
                               json={"move": move},
                               headers=bob_headers(created))
            assert resp.status_code == 200
        token = created["tokens"]["bob"]
        client.post(f"/api/v1/sessions/{sid}/close",
                    headers={"X-Role-Token": token})
        result = client.get(f"/api/v1/sessions/{sid}/result")
        assert result.status_code == 200
        return result.json()

    def test_fixed_seed_and_transcript_replays_identically(self, client):
        moves = [{"move": "open", "box": b} for b in "ABABA"]
        first = self._transcript(client, seed=31, moves=moves)
        second = self._transcript(client, seed=31, moves=moves)
        assert first["trials"] == second["trials"]
        assert first["scoreboard"] == second["scoreboard"]

    def test_result_requires_closed_session(self, client):
        created = make_session(client)
        resp = client.get(f"/api/v1/sessions/{created['session_id']}/result")
        assert resp.status_code == 409

    def test_trusted_log_records_disturbance_branch(self, client):
        created = make_session(client, seed=37,
                               config={"disturbance_delta": 1.0})
        sid = created["session_id"]
        for _ in range(30):
            client.post(f"/api/v1/sessions/{sid}/moves",
                        json={"move": {"move": "open", "box": "A"}},
                        headers=bob_headers(created))
        client.post(f"/api/v1/sessions/{sid}/close",
                    headers=bob_headers(created))
        result = client.get(f"/api/v1/sessions/{sid}/result").json()
        assert any(t["disturbed"] for t in result["trials"])
        found_trials = [t for t in result["trials"] if t["found"]]
        assert found_trials
        assert all(t["disturbed"] for t in found_trials)


class TestConcurrency:
    def test_racing_moves_one_wins_one_409(self, client):
        created = make_session(client, seed=41)
        sid = created["session_id"]
        results = []
        barrier = threading.Barrier(2)

        def fire():
            barrier.wait()
            resp = client.post(
                f"/api/v1/sessions/{sid}/moves",
                json={"move": {"move": "open", "box": "A"}, "trial_index": 0},
                headers=bob_headers(created))
            results.append(resp.status_code)

        threads = [threading.Thread(target=fire) for _ in range(2)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert sorted(results) == [200, 409]


class TestPersistence:
    def test_jsonl_log_written_per_trial(self, tmp_path):
        client = TestClient(create_app(persist_dir=str(tmp_path)))
        created = make_session(client, seed=43)
        sid = created["session_id"]
        for _ in range(5):
            client.post(f"/api/v1/sessions/{sid}/moves",
                        json={"move": {"move": "open", "box": "A"}},
                        headers=bob_headers(created))
        log = (tmp_path / f"{sid}.jsonl").read_text().splitlines()
        assert len(log) == 5
        first = json.loads(log[0])
        assert first["trial_index"] == 0
        assert {"moves", "accepted", "found", "win", "payoffs"} <= set(first)

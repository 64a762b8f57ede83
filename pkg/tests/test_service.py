import math

import pytest
from fastapi.testclient import TestClient

from padberg.render import ensure_default_samples
from padberg.service import create_app


@pytest.fixture
def samples_dir(tmp_path):
    path = tmp_path / "samples"
    ensure_default_samples(path)
    return path


@pytest.fixture
def client(samples_dir):
    return TestClient(create_app(samples_dir=samples_dir))


def make_session(client, text="Ave Maria"):
    response = client.post("/api/sessions", json={"text": text})
    assert response.status_code == 201
    return response.json()


class TestHealth:
    def test_ok(self, client):
        response = client.get("/api/health")
        assert response.status_code == 200
        assert response.json() == {"status": "ok"}


class TestCreateSession:
    def test_created_payload(self, client):
        body = make_session(client)
        assert body["id"] == "s1"
        assert body["text"] == "Ave Maria"
        assert body["block_count"] == 1
        assert len(body["log"]) == 11
        assert body["log"][0] == "note 1: A -> 440.00 Hz, 2 ticks"
        row = body["row"]
        assert row["length"] == 8
        assert row["total_ticks"] == 15
        assert row["notes"][0] == {
            "letter": "A",
            "pitch_index": 0,
            "octave": 0,
            "duration_ticks": 2,
            "frequency_hz": 440.0,
        }
        score = body["score"]
        assert score["voices"] == 1
        assert score["repeats"] == 2
        assert score["total_ticks"] == 30
        assert score["duration_seconds"] == 30 * 0.125
        assert body["config"]["instrument"] == "sine"

    def test_ids_are_sequential(self, client):
        assert make_session(client)["id"] == "s1"
        assert make_session(client, "second text")["id"] == "s2"

    def test_empty_input(self, client):
        response = client.post("/api/sessions", json={"text": "12 !?"})
        assert response.status_code == 400
        assert response.json()["code"] == "empty_input"

    def test_missing_text_field(self, client):
        response = client.post("/api/sessions", json={})
        assert response.status_code == 400
        assert response.json()["code"] == "invalid_request"

    def test_same_text_same_session_payload(self, samples_dir):
        payloads = []
        for _ in range(2):
            fresh = TestClient(create_app(samples_dir=samples_dir))
            body = make_session(fresh, "MUSIC IS MATHEMATICS")
            body.pop("created_at")
            payloads.append(body)
        assert payloads[0] == payloads[1]


class TestGetSession:
    def test_detail_includes_events(self, client):
        sid = make_session(client)["id"]
        response = client.get(f"/api/sessions/{sid}")
        assert response.status_code == 200
        body = response.json()
        events = body["events"]
        assert len(events) == body["score"]["event_count"]
        assert events[0]["letter"] == "A"
        assert events[0]["start_tick"] == 0
        assert events[0]["frequency_hz"] == 440.0

    def test_unknown_session(self, client):
        response = client.get("/api/sessions/s999")
        assert response.status_code == 404
        assert response.json()["code"] == "unknown_session"


class TestUpdateConfig:
    def test_voices_and_mode(self, client):
        sid = make_session(client)["id"]
        response = client.put(
            f"/api/sessions/{sid}/config", json={"voices": 3, "mode": "fugue"}
        )
        assert response.status_code == 200
        body = response.json()
        assert body["config"]["voices"] == 3
        assert body["config"]["mode"] == "fugue"
        # three staggered voices: 2 measures of lead-in plus 2 repeats
        assert body["score"]["total_ticks"] == 2 * 15 + 2 * 15
        assert body["score"]["duration_seconds"] == 60 * 0.125

    def test_partial_updates_accumulate(self, client):
        sid = make_session(client)["id"]
        client.put(f"/api/sessions/{sid}/config", json={"voices": 2})
        response = client.put(f"/api/sessions/{sid}/config", json={"repeats": 3})
        config = response.json()["config"]
        assert config["voices"] == 2
        assert config["repeats"] == 3

    def test_update_visible_in_get(self, client):
        sid = make_session(client)["id"]
        client.put(f"/api/sessions/{sid}/config", json={"voices": 2})
        body = client.get(f"/api/sessions/{sid}").json()
        assert body["score"]["voices"] == 2
        assert {ev["voice"] for ev in body["events"]} == {0, 1}

    def test_invalid_voices(self, client):
        sid = make_session(client)["id"]
        response = client.put(f"/api/sessions/{sid}/config", json={"voices": 5})
        assert response.status_code == 400
        assert response.json()["code"] == "invalid_config"

    def test_invalid_repeats(self, client):
        sid = make_session(client)["id"]
        response = client.put(f"/api/sessions/{sid}/config", json={"repeats": 0})
        assert response.status_code == 400
        assert response.json()["code"] == "invalid_config"

    def test_invalid_mode_rejected_by_schema(self, client):
        sid = make_session(client)["id"]
        response = client.put(f"/api/sessions/{sid}/config", json={"mode": "rondo"})
        assert response.status_code == 400
        assert response.json()["code"] == "invalid_request"

    def test_invalid_tick_seconds(self, client):
        sid = make_session(client)["id"]
        response = client.put(
            f"/api/sessions/{sid}/config", json={"tick_seconds": 0.0}
        )
        assert response.status_code == 400
        assert response.json()["code"] == "invalid_config"

    def test_invalid_instrument_name(self, client):
        sid = make_session(client)["id"]
        response = client.put(
            f"/api/sessions/{sid}/config", json={"instrument": "organ"}
        )
        assert response.status_code == 400
        assert response.json()["code"] == "invalid_config"

    def test_sample_instrument_accepted(self, client):
        sid = make_session(client)["id"]
        response = client.put(
            f"/api/sessions/{sid}/config", json={"instrument": "sample:one"}
        )
        assert response.status_code == 200
        assert response.json()["config"]["instrument"] == "sample:one"

    def test_unknown_sample_conflict(self, client):
        sid = make_session(client)["id"]
        response = client.put(
            f"/api/sessions/{sid}/config", json={"instrument": "sample:nope"}
        )
        assert response.status_code == 409
        assert response.json()["code"] == "missing_sample"

    def test_sample_without_assets_dir(self):
        client = TestClient(create_app())
        sid = make_session(client)["id"]
        response = client.put(
            f"/api/sessions/{sid}/config", json={"instrument": "sample:one"}
        )
        assert response.status_code == 409
        assert response.json()["code"] == "missing_sample"

    def test_unknown_session(self, client):
        response = client.put("/api/sessions/s999/config", json={"voices": 2})
        assert response.status_code == 404


class TestRender:
    def test_wav_response(self, client):
        body = make_session(client)
        response = client.post(f"/api/sessions/{body['id']}/render")
        assert response.status_code == 200
        assert response.headers["content-type"].startswith("audio/wav")
        assert response.content[:4] == b"RIFF"
        ticks = body["score"]["total_ticks"]
        samples = math.ceil(ticks * 0.125 * 44100)
        assert len(response.content) == 44 + 2 * samples

    def test_render_tracks_config(self, client):
        sid = make_session(client)["id"]
        short = client.post(f"/api/sessions/{sid}/render").content
        client.put(f"/api/sessions/{sid}/config", json={"voices": 3})
        long = client.post(f"/api/sessions/{sid}/render").content
        assert len(long) > len(short)

    def test_sample_instrument_renders(self, client):
        sid = make_session(client)["id"]
        client.put(f"/api/sessions/{sid}/config", json={"instrument": "sample:two"})
        response = client.post(f"/api/sessions/{sid}/render")
        assert response.status_code == 200
        assert response.content[:4] == b"RIFF"

    def test_sample_deleted_after_config(self, client, samples_dir):
        sid = make_session(client)["id"]
        client.put(f"/api/sessions/{sid}/config", json={"instrument": "sample:three"})
        (samples_dir / "three.wav").unlink()
        response = client.post(f"/api/sessions/{sid}/render")
        assert response.status_code == 409
        assert response.json()["code"] == "missing_sample"

    def test_unknown_session(self, client):
        response = client.post("/api/sessions/s999/render")
        assert response.status_code == 404


class TestExportCsv:
    def test_monophonic_default(self, client):
        sid = make_session(client)["id"]
        client.put(f"/api/sessions/{sid}/config", json={"voices": 3})
        response = client.get(f"/api/sessions/{sid}/export.csv")
        assert response.status_code == 200
        assert response.headers["content-type"].startswith("text/csv")
        lines = response.text.splitlines()
        assert lines[0].startswith("voice,start_tick,")
        assert {line.split(",")[0] for line in lines[1:]} == {"0"}

    def test_all_voices(self, client):
        sid = make_session(client)["id"]
        client.put(f"/api/sessions/{sid}/config", json={"voices": 3})
        response = client.get(
            f"/api/sessions/{sid}/export.csv", params={"monophonic": "false"}
        )
        voices = {line.split(",")[0] for line in response.text.splitlines()[1:]}
        assert voices == {"0", "1", "2"}

    def test_unknown_session(self, client):
        response = client.get("/api/sessions/s999/export.csv")
        assert response.status_code == 404


class TestUiMount:
    def test_static_ui_served(self, tmp_path):
        ui = tmp_path / "dist"
        ui.mkdir()
        (ui / "index.html").write_text("<!doctype html><title>composer</title>")
        client = TestClient(create_app(ui_dir=ui))
        response = client.get("/")
        assert response.status_code == 200
        assert "composer" in response.text

    def test_api_still_reachable_with_ui(self, tmp_path):
        ui = tmp_path / "dist"
        ui.mkdir()
        (ui / "index.html").write_text("<html></html>")
        client = TestClient(create_app(ui_dir=ui))
        assert client.get("/api/health").status_code == 200

    def test_no_ui_dir(self):
        client = TestClient(create_app())
        assert client.get("/").status_code == 404

from __future__ import annotations

import json
import threading
import time

import pytest
from fastapi.testclient import TestClient

from modelbench.api import RunRegistry, create_app

from .conftest import FIXTURES


@pytest.fixture
def api(tmp_path):
    profiles = tmp_path / "profiles"
    profiles.mkdir()
    out = tmp_path / "out"
    profile = {
        "name": "fixture",
        "version": "1.0",
        "output_path": str(out),
        "scan": {
            "dataset_path": str(FIXTURES / "dataset_archi"),
            "include": ["*.archimate"],
            "exclude": ["**/tmp/**"],
        },
        "parse": {"parser_language": "ArchiMate-Archi"},
        "report": {},
    }
    (profiles / "fixture.json").write_text(json.dumps(profile), encoding="utf-8")
    client = TestClient(create_app(profiles))
    return client, profiles, out


def _wait_for_run(client, token, timeout=30.0):
    deadline = time.time() + timeout
    while time.time() < deadline:
        state = client.get(f"/api/runs/{token}").json()
        if state["state"] in ("done", "error"):
            return state
        time.sleep(0.02)
    raise TimeoutError("run did not finish")


def test_list_profiles(api):
    client, _, _ = api
    assert client.get("/api/profiles").json() == {"profiles": ["fixture"]}


def test_get_profile_round_trip(api):
    client, _, _ = api
    body = client.get("/api/profiles/fixture").json()
    assert body["name"] == "fixture"
    assert client.get("/api/profiles/nope").status_code == 404


def test_put_profile_validates(api):
    client, profiles, _ = api
    invalid = {"name": "x", "output_path": "o",
               "scan": {"dataset_path": "d", "include": ["*"]}, "parse": {}}
    response = client.put("/api/profiles/broken", json=invalid)
    assert response.status_code == 400
    assert response.json()["error"]["path"] == "parse.parser_language"
    assert not (profiles / "broken.json").exists()


def test_put_valid_profile_persists(api):
    client, profiles, out = api
    body = json.loads((profiles / "fixture.json").read_text())
    body["name"] = "copy"
    assert client.put("/api/profiles/copy", json=body).status_code == 200
    assert (profiles / "copy.json").is_file()
    assert "copy" in client.get("/api/profiles").json()["profiles"]


def test_artifact_404_before_any_run(api):
    client, _, _ = api
    response = client.get("/api/artifacts/report.json", params={"profile": "fixture"})
    assert response.status_code == 404


def test_unknown_artifact_name_404(api):
    client, _, _ = api
    assert client.get("/api/artifacts/../secrets.json").status_code == 404
    assert client.get("/api/artifacts/whatever.json").status_code == 404


def test_scan_run_reports_totals(api):
    client, _, out = api
    response = client.post("/api/runs/scan", json={"profile": "fixture"})
    assert response.status_code == 202
    token = response.json()["token"]
    state = _wait_for_run(client, token)
    assert state["state"] == "done"
    assert state["summary"]["candidates"] == 5
    assert (out / "dataset_info.json").is_file()


def test_unknown_stage_404(api):
    client, _, _ = api
    assert client.post("/api/runs/compile", json={"profile": "fixture"}).status_code == 404


def test_unknown_profile_404(api):
    client, _, _ = api
    assert client.post("/api/runs/scan", json={"profile": "ghost"}).status_code == 404


def test_dependency_error_surfaces_as_run_error(api):
    client, _, _ = api
    token = client.post("/api/runs/measure", json={"profile": "fixture"}).json()["token"]
    state = _wait_for_run(client, token)
    assert state["state"] == "error"
    assert "ir_info.json" in state["error"]


def test_full_run_serves_all_artifacts(api):
    client, _, out = api
    token = client.post("/api/runs/run", json={"profile": "fixture"}).json()["token"]
    state = _wait_for_run(client, token)
    assert state["state"] == "done"
    stages = [s["stage"] for s in state["summary"]]
    assert stages == ["scan", "parse", "measure", "report"]
    for name in ("dataset_info.json", "ir_info.json", "measures.json", "measures_per_model.json", "report.json"):
        response = client.get(f"/api/artifacts/{name}", params={"profile": "fixture"})
        assert response.status_code == 200, name
        # served verbatim
        assert response.content == (out / name).read_bytes()
    # profile query may be omitted when only one profile exists
    assert client.get("/api/artifacts/report.json").status_code == 200


def test_model_ir_endpoint(api):
    client, _, out = api
    token = client.post("/api/runs/run", json={"profile": "fixture"}).json()["token"]
    _wait_for_run(client, token)
    ir_info = json.loads((out / "ir_info.json").read_text())
    model_id = next(mid for mid, rec in ir_info["index"].items() if rec["status"] != "failure")
    response = client.get(f"/api/models/{model_id}/ir", params={"profile": "fixture"})
    assert response.status_code == 200
    assert response.json()["id"] == model_id
    assert client.get("/api/models/deadbeef/ir").status_code == 404


def test_runs_serialized_per_profile():
    registry = RunRegistry()
    release = threading.Event()

    def blocked():
        release.wait(5)
        return {"ok": True}

    token = registry.start("p", "scan", blocked)
    assert token is not None
    assert registry.start("p", "scan", blocked) is None  # 409 path
    assert registry.start("other", "scan", lambda: {}) is not None
    release.set()
    deadline = time.time() + 5
    while registry.get(token)["state"] != "done" and time.time() < deadline:
        time.sleep(0.01)
    assert registry.get(token)["state"] == "done"
    follow_up = registry.start("p", "scan", lambda: {})
    assert follow_up is not None


def test_conflict_returns_409(api, monkeypatch):
    client, _, _ = api
    import modelbench.api as api_module

    started = threading.Event()
    release = threading.Event()

    def slow_stage(stage, profile, out):
        started.set()
        release.wait(5)
        return {"stage": stage}

    monkeypatch.setattr(api_module, "run_stage", slow_stage)
    first = client.post("/api/runs/scan", json={"profile": "fixture"})
    assert first.status_code == 202
    assert started.wait(5)
    second = client.post("/api/runs/scan", json={"profile": "fixture"})
    assert second.status_code == 409
    release.set()
    _wait_for_run(client, first.json()["token"])


def test_static_ui_served_when_built(tmp_path):
    dist = FIXTURES.parent.parent / "frontend" / "dist"
    if not (dist / "index.html").is_file():
        pytest.skip("frontend bundle not built; primary suite does not require it")
    client = TestClient(create_app(tmp_path, ui_dir=dist))
    response = client.get("/")
    assert response.status_code == 200
    assert "modelbench" in response.text


def test_cli_api_equivalence(api, tmp_path):
    from modelbench.cli import main

    client, profiles, api_out = api
    token = client.post("/api/runs/run", json={"profile": "fixture"}).json()["token"]
    assert _wait_for_run(client, token)["state"] == "done"

    cli_out = tmp_path / "cli_out"
    assert main(["run", "--profile", str(profiles / "fixture.json"), "--out", str(cli_out)]) == 0

    def masked(path):
        data = json.loads(path.read_text())
        if "index" in data:
            for record in data["index"].values():
                record["parse_time_ms"] = 0.0
        if "dataset" in data and "d1.m3" in data.get("dataset", {}):
            data["dataset"]["d1.m3"] = None
        for model_metrics in data.values() if path.name == "measures_per_model.json" else []:
            model_metrics.pop("d1.m3", None)
        return json.dumps(data, sort_keys=True)

    for name in ("dataset_info.json", "ir_info.json", "measures.json", "measures_per_model.json", "report.json"):
        assert masked(api_out / name) == masked(cli_out / name), name

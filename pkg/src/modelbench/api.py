"""HTTP API exposing the pipeline stages and persisted artifacts to the web UI.

Stage execution is asynchronous: POST /api/runs/{stage} returns 202 plus a
run token, GET /api/runs/{token} reports queued|running|done|error with the
stage summary.  Runs are serialized per profile (409 while one is in
flight).  The API invokes exactly the same stage functions as the CLI.
"""

from __future__ import annotations

import os
import re
import threading
import uuid
from pathlib import Path

from fastapi import Body, FastAPI
from fastapi.responses import FileResponse, JSONResponse
from fastapi.staticfiles import StaticFiles

from .artifacts import ARTIFACT_NAMES, IR_DIR, ir_file_name
from .errors import BenchmarkError, SchemaViolation
from .pipeline import STAGES, effective_output_path, run_stage
from .profile import load_profile, validate_profile_dict, write_profile

_MODEL_ID_RE = re.compile(r"^[0-9a-f]{64}$")

RUN_STAGES = (*STAGES, "run")


class RunRegistry:
    """In-memory run tokens; one run at a time per profile."""

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._runs: dict[str, dict] = {}
        self._active_profiles: set[str] = set()

    def start(self, profile_name: str, stage: str, runner) -> str | None:
        with self._lock:
            if profile_name in self._active_profiles:
                return None
            self._active_profiles.add(profile_name)
            token = uuid.uuid4().hex
            self._runs[token] = {"state": "queued", "stage": stage, "profile": profile_name}

        def target() -> None:
            with self._lock:
                self._runs[token]["state"] = "running"
            try:
                summary = runner()
                with self._lock:
                    self._runs[token].update({"state": "done", "summary": summary})
            except Exception as exc:
                with self._lock:
                    self._runs[token].update({"state": "error", "error": str(exc)})
            finally:
                with self._lock:
                    self._active_profiles.discard(profile_name)

        threading.Thread(target=target, daemon=True).start()
        return token

    def get(self, token: str) -> dict | None:
        with self._lock:
            run = self._runs.get(token)
            return dict(run) if run else None


def create_app(profile_dir: str | Path, ui_dir: str | Path | None = None) -> FastAPI:
    profile_dir = Path(profile_dir)
    registry = RunRegistry()
    app = FastAPI(title="modelbench", docs_url=None, redoc_url=None)

    def profile_path(name: str) -> Path:
        return profile_dir / f"{name}.json"

    def list_profiles() -> list[str]:
        return sorted(p.stem for p in profile_dir.glob("*.json"))

    def resolve_profile_name(name: str | None) -> str | JSONResponse:
        if name:
            return name
        names = list_profiles()
        if len(names) == 1:
            return names[0]
        return JSONResponse({"error": "profile query parameter required"}, status_code=400)

    @app.get("/api/profiles")
    def get_profiles() -> dict:
        return {"profiles": list_profiles()}

    @app.get("/api/profiles/{name}")
    def get_profile(name: str):
        path = profile_path(name)
        if not path.is_file():
            return JSONResponse({"error": f"unknown profile {name!r}"}, status_code=404)
        return FileResponse(path, media_type="application/json")

    @app.put("/api/profiles/{name}")
    def put_profile(name: str, payload: dict = Body(...)):
        try:
            profile = validate_profile_dict(payload, base_dir=profile_dir)
        except SchemaViolation as exc:
            return JSONResponse({"error": {"path": exc.path, "message": str(exc)}}, status_code=400)
        except BenchmarkError as exc:
            return JSONResponse({"error": {"path": "", "message": str(exc)}}, status_code=400)
        write_profile(profile, profile_path(name))
        return {"profile": name, "valid": True}

    @app.post("/api/runs/{stage}", status_code=202)
    def post_run(stage: str, payload: dict = Body(...)):
        if stage not in RUN_STAGES:
            return JSONResponse({"error": f"unknown stage {stage!r}"}, status_code=404)
        name = payload.get("profile")
        if not isinstance(name, str) or not name:
            return JSONResponse({"error": "body must carry a profile name"}, status_code=400)
        path = profile_path(name)
        if not path.is_file():
            return JSONResponse({"error": f"unknown profile {name!r}"}, status_code=404)
        try:
            profile = load_profile(path)
        except BenchmarkError as exc:
            return JSONResponse({"error": str(exc)}, status_code=400)
        out = effective_output_path(profile)

        def runner():
            if stage == "run":
                return [run_stage(s, profile, out) for s in STAGES]
            return run_stage(stage, profile, out)

        token = registry.start(name, stage, runner)
        if token is None:
            return JSONResponse(
                {"error": f"a run for profile {name!r} is already in flight"}, status_code=409
            )
        return {"token": token, "state": "queued"}

    @app.get("/api/runs/{token}")
    def get_run(token: str):
        run = registry.get(token)
        if run is None:
            return JSONResponse({"error": "unknown run token"}, status_code=404)
        return run

    @app.get("/api/artifacts/{name}")
    def get_artifact(name: str, profile: str | None = None):
        if name not in ARTIFACT_NAMES:
            return JSONResponse({"error": f"unknown artifact {name!r}"}, status_code=404)
        resolved = resolve_profile_name(profile)
        if isinstance(resolved, JSONResponse):
            return resolved
        path = profile_path(resolved)
        if not path.is_file():
            return JSONResponse({"error": f"unknown profile {resolved!r}"}, status_code=404)
        out = effective_output_path(load_profile(path))
        artifact = out / name
        if not artifact.is_file():
            return JSONResponse({"error": f"artifact {name!r} not produced yet"}, status_code=404)
        return FileResponse(artifact, media_type="application/json")

    @app.get("/api/models/{model_id}/ir")
    def get_model_ir(model_id: str, profile: str | None = None):
        if not _MODEL_ID_RE.match(model_id):
            return JSONResponse({"error": "model id must be a 64-char hex hash"}, status_code=404)
        resolved = resolve_profile_name(profile)
        if isinstance(resolved, JSONResponse):
            return resolved
        path = profile_path(resolved)
        if not path.is_file():
            return JSONResponse({"error": f"unknown profile {resolved!r}"}, status_code=404)
        out = effective_output_path(load_profile(path))
        ir_path = out / IR_DIR / ir_file_name(model_id)
        if not ir_path.is_file():
            return JSONResponse({"error": f"no IR for model {model_id}"}, status_code=404)
        return FileResponse(ir_path, media_type="application/json")

    resolved_ui = _resolve_ui_dir(ui_dir)
    if resolved_ui is not None:
        app.mount("/", StaticFiles(directory=resolved_ui, html=True), name="ui")
    else:
        @app.get("/")
        def index() -> dict:
            return {"service": "modelbench", "ui": "not built", "api": "/api/profiles"}

    return app


def _resolve_ui_dir(ui_dir: str | Path | None) -> Path | None:
    candidates = []
    if ui_dir:
        candidates.append(Path(ui_dir))
    env = os.environ.get("MODELBENCH_UI")
    if env:
        candidates.append(Path(env))
    candidates.append(Path.cwd() / "frontend" / "dist")
    for candidate in candidates:
        if candidate.is_dir():
            return candidate
    return None


def serve(profile_dir: str | Path, host: str = "127.0.0.1", port: int = 8080,
          ui_dir: str | Path | None = None) -> None:
    import uvicorn

    uvicorn.run(create_app(profile_dir, ui_dir=ui_dir), host=host, port=port, log_level="warning")

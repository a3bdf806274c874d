"""Stage orchestration shared by the CLI and the HTTP API.

Each stage reads the artifacts of the one before it from the output
directory, so stages can be rerun independently.  Output path precedence:
explicit override > MODELBENCH_OUT environment variable > profile.
"""

from __future__ import annotations

import os
from pathlib import Path

from .artifacts import (
    DATASET_INFO,
    IR_DIR,
    IR_INFO,
    MEASURES,
    MEASURES_PER_MODEL,
    ir_file_name,
    read_artifact,
)
from .errors import MissingArtifact
from .ir import IRGraph
from .measures import run_measure
from .measures.d1 import non_failed_model_ids
from .parsing import run_parse
from .profile import BenchmarkProfile
from .report import run_report
from .scan import run_scan

STAGES = ("scan", "parse", "measure", "report")

OUTPUT_ENV_VAR = "MODELBENCH_OUT"


def effective_output_path(profile: BenchmarkProfile, override: str | None = None) -> Path:
    if override:
        return Path(override)
    env = os.environ.get(OUTPUT_ENV_VAR)
    if env:
        return Path(env)
    return profile.resolved_output_path()


def _require(out: Path, name: str, stage_hint: str) -> dict:
    path = out / name
    if not path.is_file():
        raise MissingArtifact(name, stage_hint)
    return read_artifact(path)


def load_graphs(out: Path, ir_info: dict) -> list[IRGraph]:
    """IR graphs of all non-failed models, ordered by model id."""
    graphs = []
    for model_id in non_failed_model_ids(ir_info):
        path = out / IR_DIR / ir_file_name(model_id)
        if not path.is_file():
            raise MissingArtifact(f"{IR_DIR}/{ir_file_name(model_id)}", "rerun the parse stage")
        graphs.append(IRGraph.from_json_dict(read_artifact(path)))
    return graphs


def stage_scan(profile: BenchmarkProfile, out: Path) -> dict:
    info = run_scan(profile, output_path=out)
    return {"stage": "scan", **info["totals"]}


def stage_parse(profile: BenchmarkProfile, out: Path) -> dict:
    dataset_info = _require(out, DATASET_INFO, "run the scan stage first")
    ir_info = run_parse(profile, dataset_info, output_path=out)
    return {"stage": "parse", **{k: v for k, v in ir_info["totals"].items() if k != "warnings_by_type"}}


def stage_measure(profile: BenchmarkProfile, out: Path) -> dict:
    ir_info = _require(out, IR_INFO, "run the parse stage first")
    graphs = load_graphs(out, ir_info)
    store = run_measure(profile, ir_info, graphs, output_path=out)
    return {
        "stage": "measure",
        "measures": len(store.dataset),
        "models_measured": len(graphs),
        "dimension_scores": dict(store.dimension_scores),
    }


def stage_report(profile: BenchmarkProfile, out: Path) -> dict:
    measures = _require(out, MEASURES, "run the measure stage first")
    per_model = _require(out, MEASURES_PER_MODEL, "run the measure stage first")
    payload = run_report(profile, measures, per_model, output_path=out)
    return {"stage": "report", "objects": len(payload["objects"])}


_STAGE_FNS = {
    "scan": stage_scan,
    "parse": stage_parse,
    "measure": stage_measure,
    "report": stage_report,
}


def run_stage(stage: str, profile: BenchmarkProfile, out: Path) -> dict:
    return _STAGE_FNS[stage](profile, out)


def run_all(profile: BenchmarkProfile, out: Path) -> list[dict]:
    return [run_stage(stage, profile, out) for stage in STAGES]

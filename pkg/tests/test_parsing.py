from __future__ import annotations

import json

import pytest

from modelbench.artifacts import read_artifact
from modelbench.errors import UnknownParser
from modelbench.ir import Diagnostic
from modelbench.parsing import classify_status, run_parse, select_parser
from modelbench.scan import run_scan


def test_unknown_parser_lists_available():
    with pytest.raises(UnknownParser) as excinfo:
        select_parser("UML")
    message = str(excinfo.value)
    assert "ArchiMate-Archi" in message and "Ecore" in message


def test_classify_status_cases():
    warn = Diagnostic("UNRESOLVED_REFERENCE", "w")
    assert classify_status([], 0, ir_built=True) == "success"
    assert classify_status([warn], 0, ir_built=True) == "partial"
    assert classify_status([], 2, ir_built=True) == "partial"
    assert classify_status([warn], 1, ir_built=False) == "failure"
    assert classify_status([], 0, ir_built=False) == "failure"


@pytest.fixture
def parsed_fixture(archi_profile, tmp_path):
    out = tmp_path / "out"
    dataset_info = run_scan(archi_profile, output_path=out)
    ir_info = run_parse(archi_profile, dataset_info, output_path=out)
    return out, ir_info


def test_run_parse_fixture_counts(parsed_fixture):
    _, ir_info = parsed_fixture
    totals = ir_info["totals"]
    # candidates: a(clean) b(containment) c(rel endpoint) junction bad(garbage)
    assert totals["n_models"] == 5
    assert totals["n_success"] == 3
    assert totals["n_partial"] == 1
    assert totals["n_failed"] == 1
    assert totals["n_models"] == totals["n_success"] + totals["n_partial"] + totals["n_failed"]
    assert totals["warnings_by_type"] == {"UNRESOLVED_REFERENCE": 1}
    assert totals["warnings_total"] == 1


def test_failure_record_carries_error_and_no_ir(parsed_fixture):
    out, ir_info = parsed_fixture
    failed = [rec for rec in ir_info["index"].values() if rec["status"] == "failure"]
    assert len(failed) == 1
    record = failed[0]
    assert record["error_msg"]
    assert record["source_path"] == "bad.archimate"
    assert not (out / "ir" / f"{record['model_id']}.json").exists()


def test_ir_written_iff_not_failure(parsed_fixture):
    out, ir_info = parsed_fixture
    for model_id, record in ir_info["index"].items():
        exists = (out / "ir" / f"{model_id}.json").is_file()
        assert exists == (record["status"] != "failure")


def test_totals_match_per_model_sums(parsed_fixture):
    _, ir_info = parsed_fixture
    records = list(ir_info["index"].values())
    totals = ir_info["totals"]
    assert totals["elements_loaded"] == sum(r["n_loaded"] for r in records)
    assert totals["elements_skipped"] == sum(r["n_skipped"] for r in records)
    assert totals["warnings_total"] == sum(len(r["warnings"]) for r in records)


def test_rerun_identical_except_parse_time(archi_profile, tmp_path):
    def run_once(out):
        dataset_info = run_scan(archi_profile, output_path=out)
        run_parse(archi_profile, dataset_info, output_path=out)
        info = read_artifact(out / "ir_info.json")
        for record in info["index"].values():
            record["parse_time_ms"] = 0.0
        return json.dumps(info, sort_keys=True)

    assert run_once(tmp_path / "r1") == run_once(tmp_path / "r2")


def test_vanished_candidate_recorded_as_failure(archi_profile, tmp_path):
    out = tmp_path / "out"
    dataset_info = run_scan(archi_profile, output_path=out)
    dataset_info["candidates"].append("ghost.archimate")
    ir_info = run_parse(archi_profile, dataset_info, output_path=out)
    ghost = [r for r in ir_info["index"].values() if r["source_path"] == "ghost.archimate"]
    assert len(ghost) == 1
    assert ghost[0]["status"] == "failure"
    assert ghost[0]["error_msg"] == "file missing"


def test_empty_candidate_list(archi_profile, tmp_path):
    out = tmp_path / "out"
    dataset_info = run_scan(archi_profile, output_path=out)
    dataset_info["candidates"] = []
    ir_info = run_parse(archi_profile, dataset_info, output_path=out)
    assert ir_info["totals"]["n_models"] == 0
    assert ir_info["index"] == {}


def test_parser_crash_is_contained(archi_profile, tmp_path, monkeypatch):
    from modelbench.parsing import REGISTRY
    from modelbench.parsing.base import ParserDescriptor

    def explode(content, source_path, **kwargs):
        raise RuntimeError("boom")

    monkeypatch.setitem(
        REGISTRY,
        "ArchiMate-Archi",
        ParserDescriptor("ArchiMate-Archi", "ArchiMate", (".archimate",), explode),
    )
    out = tmp_path / "out"
    dataset_info = run_scan(archi_profile, output_path=out)
    ir_info = run_parse(archi_profile, dataset_info, output_path=out)
    assert ir_info["totals"]["n_failed"] == ir_info["totals"]["n_models"]
    assert all("boom" in r["error_msg"] for r in ir_info["index"].values())


def test_hung_parser_times_out(archi_profile, tmp_path, monkeypatch):
    import time as time_module

    from modelbench.parsing import REGISTRY
    from modelbench.parsing.base import ParserDescriptor

    calls = {"n": 0}

    def sleepy(content, source_path, **kwargs):
        calls["n"] += 1
        time_module.sleep(30)

    monkeypatch.setitem(
        REGISTRY,
        "ArchiMate-Archi",
        ParserDescriptor("ArchiMate-Archi", "ArchiMate", (".archimate",), sleepy),
    )
    data = archi_profile.to_json_dict()
    data["parse"]["timeout_s"] = 0.05
    from modelbench.profile import validate_profile_dict

    profile = validate_profile_dict(data, base_dir=archi_profile.base_dir)
    out = tmp_path / "out"
    dataset_info = run_scan(profile, output_path=out)
    dataset_info["candidates"] = dataset_info["candidates"][:2]
    ir_info = run_parse(profile, dataset_info, output_path=out)
    assert calls["n"] == 2  # a fresh worker replaces each abandoned one
    assert all(r["error_msg"].startswith("timeout") for r in ir_info["index"].values())

from __future__ import annotations

import json

import pytest

from modelbench.artifacts import read_artifact
from modelbench.measures import aggregate_dimension_scores, run_measure
from modelbench.metrics import MeasureStore
from modelbench.parsing import run_parse
from modelbench.pipeline import load_graphs
from modelbench.profile import validate_profile_dict
from modelbench.scan import run_scan


@pytest.fixture
def pipeline_out(archi_profile, tmp_path):
    out = tmp_path / "out"
    dataset_info = run_scan(archi_profile, output_path=out)
    ir_info = run_parse(archi_profile, dataset_info, output_path=out)
    graphs = load_graphs(out, ir_info)
    return out, ir_info, graphs


def test_full_measure_run_emits_all_enabled(archi_profile, pipeline_out):
    out, ir_info, graphs = pipeline_out
    store = run_measure(archi_profile, ir_info, graphs, output_path=out)
    # d1.m3 is disabled in the committed profile
    expected = {"d1.m1", "d1.m2", "d1.m4", "d1.m5",
                "d2.m1", "d2.m2", "d2.m3", "d2.m4", "d2.m5",
                "d3.m1", "d3.m2", "d4.m1", "d4.m2", "d4.m3", "d4.m4"}
    assert set(store.dataset) == expected
    assert (out / "measures.json").is_file()
    assert (out / "measures_per_model.json").is_file()


def test_gatekeeping_excludes_failed_models(archi_profile, pipeline_out):
    out, ir_info, graphs = pipeline_out
    failed = [mid for mid, rec in ir_info["index"].items() if rec["status"] == "failure"]
    assert failed
    store = run_measure(archi_profile, ir_info, graphs, output_path=out)
    per_model = store.to_per_model_json()
    for mid in failed:
        # D1 evidence is present, IR-based measures are not
        assert set(per_model[mid]) <= {"d1.m1", "d1.m2", "d1.m3", "d1.m4", "d1.m5"}
        assert "d4.m1" not in per_model[mid]


def test_toggle_disables_group(archi_profile, pipeline_out):
    out, ir_info, graphs = pipeline_out
    data = archi_profile.to_json_dict()
    data["measure"]["lexical"] = {"enabled": False}
    profile = validate_profile_dict(data, base_dir=archi_profile.base_dir)
    store = run_measure(profile, ir_info, graphs, output_path=out)
    assert not any(mid.startswith("d2.") for mid in store.dataset)
    payload = read_artifact(out / "measures.json")
    assert not any(mid.startswith("d2.") for mid in payload["dataset"])


def test_dimension_scores(archi_profile, pipeline_out):
    out, ir_info, graphs = pipeline_out
    store = run_measure(archi_profile, ir_info, graphs, output_path=out)
    scores = store.dimension_scores
    assert set(scores) == {"d1", "d2", "d3"}  # d4 has no scored measure
    d1_scores = [store.score_of(m) for m in ("d1.m1", "d1.m2", "d1.m5")]
    assert scores["d1"] == pytest.approx(sum(d1_scores) / 3)
    assert scores["d2"] == pytest.approx(store.score_of("d2.m1"))


def test_aggregate_examples():
    store = MeasureStore()
    for mid, score in (("d1.m1", 97.0), ("d1.m2", 100.0), ("d1.m5", 94.0)):
        store.add_dataset_metrics(mid, {}, score)
    assert aggregate_dimension_scores(store)["d1"] == pytest.approx(97.0)

    store2 = MeasureStore()
    store2.add_dataset_metrics("d3.m1", {}, 99.2)
    store2.add_dataset_metrics("d3.m2", {}, 81.5)
    assert aggregate_dimension_scores(store2)["d3"] == pytest.approx(90.35)

    store3 = MeasureStore()
    store3.add_dataset_metrics("d2.m1", {}, 88.0)
    assert aggregate_dimension_scores(store3)["d2"] == 88.0


def test_all_failed_dataset_emits_notices(archi_profile, tmp_path):
    dataset = tmp_path / "bad_ds"
    dataset.mkdir()
    (dataset / "one.archimate").write_text("garbage <")
    (dataset / "two.archimate").write_text("more garbage <")
    data = archi_profile.to_json_dict()
    data["scan"]["dataset_path"] = str(dataset)
    profile = validate_profile_dict(data, base_dir=archi_profile.base_dir)
    out = tmp_path / "out"
    dataset_info = run_scan(profile, output_path=out)
    ir_info = run_parse(profile, dataset_info, output_path=out)
    assert ir_info["totals"]["n_failed"] == 2
    store = run_measure(profile, ir_info, [], output_path=out)
    assert store.dataset["d2.m1"]["metrics"] == {"notice": "no eligible models"}
    assert store.dataset["d4.m1"]["metrics"] == {"notice": "no eligible models"}
    assert store.dataset["d1.m1"]["score"] == 0.0
    assert "d2" not in store.dimension_scores


def test_measure_ids_match_contract(archi_profile, pipeline_out):
    from modelbench.metrics import MEASURE_IDS

    out, ir_info, graphs = pipeline_out
    store = run_measure(archi_profile, ir_info, graphs, output_path=out)
    assert set(store.dataset) <= set(MEASURE_IDS)
    for model_metrics in store.per_model.values():
        assert set(model_metrics) <= set(MEASURE_IDS)


def test_same_store_writes_byte_identical_files(archi_profile, pipeline_out, tmp_path):
    from modelbench.artifacts import write_artifact

    out, ir_info, graphs = pipeline_out
    store = run_measure(archi_profile, ir_info, graphs, output_path=out)
    a, b = tmp_path / "m1.json", tmp_path / "m2.json"
    write_artifact(store.to_measures_json(), a)
    write_artifact(store.to_measures_json(), b)
    assert a.read_bytes() == b.read_bytes()


def test_every_score_in_range(archi_profile, pipeline_out):
    out, ir_info, graphs = pipeline_out
    store = run_measure(archi_profile, ir_info, graphs, output_path=out)
    for entry in store.dataset.values():
        if entry["score"] is not None:
            assert 0.0 <= entry["score"] <= 100.0
    for score in store.dimension_scores.values():
        assert 0.0 <= score <= 100.0


def test_detector_unavailable_skips_measure_with_notice(archi_profile, pipeline_out, monkeypatch):
    import modelbench.measures as measures_module

    out, ir_info, graphs = pipeline_out
    monkeypatch.setattr(measures_module, "_default_detector", lambda: None)
    store = run_measure(archi_profile, ir_info, graphs, output_path=out)
    assert store.dataset["d2.m5"]["metrics"] == {"notice": "language detector unavailable"}
    assert store.dataset["d2.m5"]["score"] is None
    # the rest of the lexical group still computed
    assert "d2.m1" in store.dataset and "notice" not in store.dataset["d2.m1"]["metrics"]


def test_missing_catalog_path_raises(archi_profile, pipeline_out):
    from modelbench.errors import MissingCatalog

    out, ir_info, graphs = pipeline_out
    data = archi_profile.to_json_dict()
    data["measure"]["constructs"]["catalog_path"] = "no/such/catalog.json"
    profile = validate_profile_dict(data, base_dir=archi_profile.base_dir)
    with pytest.raises(MissingCatalog):
        run_measure(profile, ir_info, graphs, output_path=out)


def test_custom_catalog_path_resolves_relative_to_profile(archi_profile, pipeline_out, tmp_path):
    out, ir_info, graphs = pipeline_out
    catalog = {
        "language": "ArchiMate",
        "constructs": [
            {"id": "x:Component", "kind": "node_type", "match_type": "ApplicationComponent",
             "match_data_equals": {}, "meta": {"group": "app"}},
            {"id": "x:Serving", "kind": "edge_type", "match_type": "Serving",
             "match_data_equals": {}, "meta": {"group": "rel"}},
        ],
    }
    (tmp_path / "tiny_catalog.json").write_text(json.dumps(catalog), encoding="utf-8")
    data = archi_profile.to_json_dict()
    data["measure"]["constructs"]["catalog_path"] = "tiny_catalog.json"
    profile = validate_profile_dict(data, base_dir=tmp_path)
    store = run_measure(profile, ir_info, graphs, output_path=out)
    assert store.dataset["d3.m1"]["metrics"]["catalog_size"] == 2
    assert store.dataset["d3.m1"]["metrics"]["observed_constructs"] == 2


def test_measures_independent_of_graph_order(archi_profile, pipeline_out):
    out, ir_info, graphs = pipeline_out
    a = run_measure(archi_profile, ir_info, graphs, output_path=out / "a")
    b = run_measure(archi_profile, ir_info, list(reversed(graphs)), output_path=out / "b")
    assert json.dumps(a.to_measures_json(), sort_keys=True) == json.dumps(b.to_measures_json(), sort_keys=True)

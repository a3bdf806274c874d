from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from modelbench.artifacts import compute_model_id, dumps_canonical, read_artifact, write_artifact
from modelbench.errors import DecodeError
from modelbench.ir import IREdge, IRGraph, IRNode


def test_model_id_of_empty_input():
    assert compute_model_id(b"") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"


def test_model_id_of_abc():
    assert compute_model_id(b"abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"


def test_model_id_deterministic(tmp_path):
    f = tmp_path / "x.bin"
    f.write_bytes(b"\x00\x01payload")
    assert compute_model_id(f.read_bytes()) == compute_model_id(f.read_bytes())


@given(st.binary(), st.binary())
def test_model_id_distinct_contents(a, b):
    if a != b:
        assert compute_model_id(a) != compute_model_id(b)


def test_model_ids_collision_free_on_fixture_corpora(fixtures_dir):
    seen: dict[str, bytes] = {}
    for path in sorted(p for p in fixtures_dir.rglob("*") if p.is_file()):
        content = path.read_bytes()
        digest = compute_model_id(content)
        if digest in seen:
            assert seen[digest] == content, path
        seen[digest] = content


def test_round_trip_identity(tmp_path):
    graph = IRGraph(
        id="a" * 64,
        source_path="m.archimate",
        language="ArchiMate",
        attributes={"name": "M"},
        nodes=(IRNode("n1", "BusinessActor", "Alice"), IRNode("n2", "BusinessRole")),
        edges=(IREdge("e1", "Assignment", "n1", "n2"),),
    )
    path = tmp_path / "ir" / "g.json"
    write_artifact(graph.to_json_dict(), path)
    loaded = IRGraph.from_json_dict(read_artifact(path))
    assert loaded == graph
    loaded.validate()


def test_writes_are_byte_identical(tmp_path):
    value = {"b": [3, 1, 2], "a": {"y": 1.5, "x": None}}
    p1, p2 = tmp_path / "one.json", tmp_path / "two.json"
    write_artifact(value, p1)
    write_artifact(value, p2)
    assert p1.read_bytes() == p2.read_bytes()
    assert p1.read_bytes().endswith(b"\n")


def test_key_order_does_not_change_bytes(tmp_path):
    p1, p2 = tmp_path / "one.json", tmp_path / "two.json"
    write_artifact({"a": 1, "b": 2}, p1)
    write_artifact({"b": 2, "a": 1}, p2)
    assert p1.read_bytes() == p2.read_bytes()


def test_truncated_file_raises_decode_error(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"totals": {"n_models": 3', encoding="utf-8")
    with pytest.raises(DecodeError) as excinfo:
        read_artifact(path)
    assert excinfo.value.line is not None


def test_canonical_dump_rejects_nan():
    with pytest.raises(ValueError):
        dumps_canonical({"x": float("nan")})

from __future__ import annotations

import json
from pathlib import Path

import pytest

from modelbench.profile import BenchmarkProfile, load_profile

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def archi_profile(tmp_path) -> BenchmarkProfile:
    """Committed ArchiMate fixture profile, output redirected to tmp_path."""
    profile = load_profile(FIXTURES / "profiles" / "archi.json")
    return profile.with_output_path(str(tmp_path / "out"))


@pytest.fixture
def ecore_profile(tmp_path) -> BenchmarkProfile:
    profile = load_profile(FIXTURES / "profiles" / "ecore.json")
    return profile.with_output_path(str(tmp_path / "out"))


def load_expected(language: str) -> dict:
    return json.loads((FIXTURES / language / "expected.json").read_text(encoding="utf-8"))


def make_profile_dict(dataset_path: str, output_path: str, parser: str = "ArchiMate-Archi", **overrides) -> dict:
    data = {
        "name": "test",
        "version": "1.0",
        "output_path": output_path,
        "scan": {"dataset_path": dataset_path, "include": ["*.archimate"]},
        "parse": {"parser_language": parser},
        "measure": {},
        "report": {},
    }
    data.update(overrides)
    return data

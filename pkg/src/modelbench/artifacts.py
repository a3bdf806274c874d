"""Deterministic identifiers and the JSON codec for persisted artifacts.

Every artifact is JSON with UTF-8 encoding, sorted keys, two-space
indentation, and a single trailing newline, so that repeated runs produce
byte-identical files.  Writes go through a temp file and ``os.replace`` so
concurrent readers see either the old or the new complete file.
"""

from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path
from typing import Any

from .errors import DecodeError

DATASET_INFO = "dataset_info.json"
IR_INFO = "ir_info.json"
IR_DIR = "ir"
MEASURES = "measures.json"
MEASURES_PER_MODEL = "measures_per_model.json"
REPORT = "report.json"

ARTIFACT_NAMES = (DATASET_INFO, IR_INFO, MEASURES, MEASURES_PER_MODEL, REPORT)


def compute_model_id(content: bytes) -> str:
    """Lowercase hex SHA-256 digest of raw file bytes."""
    return hashlib.sha256(content).hexdigest()


def dumps_canonical(value: Any) -> str:
    return json.dumps(value, ensure_ascii=False, sort_keys=True, indent=2, allow_nan=False) + "\n"


def write_artifact(value: Any, path: str | Path) -> None:
    """Persist ``value`` as canonical JSON at ``path`` (write-then-rename)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(dumps_canonical(value), encoding="utf-8")
    os.replace(tmp, path)


def read_artifact(path: str | Path) -> Any:
    """Load a persisted JSON artifact, raising DecodeError with location on corruption."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DecodeError(str(path), exc.msg, line=exc.lineno, column=exc.colno) from exc


def ir_file_name(model_id: str) -> str:
    return f"{model_id}.json"

"""D1 Parsing: robustness evidence computed from ir_info alone."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..ir import FAILURE, ParseRecord
from ..stats import DistributionStats


@dataclass
class MeasureResult:
    measure_id: str
    metrics: dict
    score: float | None = None
    per_model: dict[str, dict] = field(default_factory=dict)


def _records(ir_info: dict) -> list[ParseRecord]:
    return [ParseRecord.from_json_dict(ir_info["index"][mid]) for mid in sorted(ir_info["index"])]


def parse_status_score(n_models: int, n_success: int, n_partial: int, n_failed: int) -> float:
    """Robustness score discounting partial parses by half and failures fully."""
    del n_failed  # fully discounted; kept in the signature for clarity at call sites
    return (n_success + 0.5 * n_partial) / n_models * 100.0


def loaded_vs_skipped_score(elements_loaded: int, elements_skipped: int) -> float:
    total = elements_loaded + elements_skipped
    if total == 0:
        return 100.0
    return 100.0 * elements_loaded / total


def warnings_score(models_with_warnings: int, n_models: int) -> float:
    return 100.0 * (1.0 - models_with_warnings / n_models)


def d1_m1_parse_status(ir_info: dict) -> MeasureResult:
    totals = ir_info["totals"]
    n_models = totals["n_models"]
    metrics: dict = {
        "n_models": n_models,
        "n_success": totals["n_success"],
        "n_partial": totals["n_partial"],
        "n_failed": totals["n_failed"],
    }
    score = None
    if n_models == 0:
        metrics.update({"share_success": None, "share_partial": None, "share_failed": None})
    else:
        metrics["share_success"] = totals["n_success"] / n_models
        metrics["share_partial"] = totals["n_partial"] / n_models
        metrics["share_failed"] = totals["n_failed"] / n_models
        score = parse_status_score(n_models, totals["n_success"], totals["n_partial"], totals["n_failed"])
    per_model = {
        r.model_id: {"parse_status": r.status, "parse_error_msg": r.error_msg}
        for r in _records(ir_info)
    }
    return MeasureResult("d1.m1", metrics, score, per_model)


def d1_m2_loaded_vs_skipped(ir_info: dict) -> MeasureResult:
    totals = ir_info["totals"]
    records = _records(ir_info)
    models_with_skips = sum(1 for r in records if r.n_skipped > 0)
    n_models = totals["n_models"]
    metrics = {
        "elements_loaded": totals["elements_loaded"],
        "elements_skipped": totals["elements_skipped"],
        "models_with_skips": models_with_skips,
        "share_models_with_skips": models_with_skips / n_models if n_models else None,
    }
    score = loaded_vs_skipped_score(totals["elements_loaded"], totals["elements_skipped"])
    per_model = {r.model_id: {"n_loaded": r.n_loaded, "n_skipped": r.n_skipped} for r in records}
    return MeasureResult("d1.m2", metrics, score, per_model)


def d1_m3_parse_time(ir_info: dict) -> MeasureResult:
    records = _records(ir_info)
    stats = DistributionStats.from_values(r.parse_time_ms for r in records)
    per_model = {r.model_id: {"parse_time_ms": r.parse_time_ms} for r in records}
    return MeasureResult("d1.m3", {"parse_time_ms": stats.to_json_dict()}, None, per_model)


def d1_m4_file_size(ir_info: dict) -> MeasureResult:
    """Source vs IR size distributions.

    Failed models contribute source_bytes (knowable before parsing) but no
    ir_bytes, so the two distributions can have different counts.
    """
    records = _records(ir_info)
    source_stats = DistributionStats.from_values(r.source_bytes for r in records)
    ir_stats = DistributionStats.from_values(r.ir_bytes for r in records if r.ir_bytes is not None)
    per_model = {r.model_id: {"source_bytes": r.source_bytes, "ir_bytes": r.ir_bytes} for r in records}
    metrics = {"source_bytes": source_stats.to_json_dict(), "ir_bytes": ir_stats.to_json_dict()}
    return MeasureResult("d1.m4", metrics, None, per_model)


def d1_m5_warnings(ir_info: dict) -> MeasureResult:
    totals = ir_info["totals"]
    records = _records(ir_info)
    n_models = totals["n_models"]
    models_with_warnings = sum(1 for r in records if r.warnings)
    by_type = dict(totals["warnings_by_type"])
    dominant = None
    if by_type:
        dominant = max(sorted(by_type), key=lambda t: by_type[t])
    metrics = {
        "models_with_warnings": models_with_warnings,
        "share_models_with_warnings": models_with_warnings / n_models if n_models else None,
        "warnings_total": totals["warnings_total"],
        "warnings_by_type": by_type,
        "dominant_type": dominant,
    }
    score = warnings_score(models_with_warnings, n_models) if n_models else None
    per_model = {}
    for r in records:
        counts: dict[str, int] = {}
        for w in r.warnings:
            counts[w.type] = counts.get(w.type, 0) + 1
        per_model[r.model_id] = {"n_warnings": len(r.warnings), "warnings_by_type": counts}
    return MeasureResult("d1.m5", metrics, score, per_model)


def has_failures_only(ir_info: dict) -> bool:
    totals = ir_info["totals"]
    return totals["n_models"] > 0 and totals["n_failed"] == totals["n_models"]


def non_failed_model_ids(ir_info: dict) -> list[str]:
    return sorted(mid for mid, rec in ir_info["index"].items() if rec["status"] != FAILURE)

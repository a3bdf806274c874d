"""Report stage: projects raw measures into visualization-ready objects.

Everything in report.json is recomputable from measures.json and
measures_per_model.json; this layer bins, ranks, and tabulates but never
introduces new statistics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

from .artifacts import REPORT, write_artifact
from .profile import BenchmarkProfile

KPI = "kpi"
SCORE_BADGE = "score_badge"
BAR = "bar"
HISTOGRAM = "histogram"
SCATTER = "scatter"
TABLE = "table"
MATRIX = "matrix"

DEFAULT_TOP_N = 25
MIN_BINS = 5
MAX_BINS = 50


@dataclass(frozen=True)
class ReportObject:
    measure_id: str
    kind: str
    title: str
    payload: dict

    def to_json_dict(self) -> dict:
        return {
            "measure_id": self.measure_id,
            "kind": self.kind,
            "title": self.title,
            "payload": self.payload,
        }


def histogram(values: list[float], bins: int) -> tuple[list[float], list[int]]:
    """Equal-width bins over [min, max]; the last bin is closed on the right."""
    if not values:
        raise ValueError("cannot bin an empty sample")
    if bins < 1:
        raise ValueError("bins must be >= 1")
    lo, hi = min(values), max(values)
    if lo == hi:
        return [lo, lo + 1], [len(values)]
    width = (hi - lo) / bins
    edges = [lo + i * width for i in range(bins)] + [hi]
    counts = [0] * bins
    for v in values:
        idx = min(int((v - lo) / width), bins - 1)
        counts[idx] += 1
    return edges, counts


def freedman_diaconis_bins(values: list[float]) -> int:
    """Freedman-Diaconis bin count, clamped to [MIN_BINS, MAX_BINS]."""
    n = len(values)
    if n < 2:
        return 1
    xs = sorted(values)
    from .stats import percentile

    iqr = percentile(xs, 75) - percentile(xs, 25)
    span = xs[-1] - xs[0]
    if span <= 0:
        return 1
    if iqr <= 0:
        return max(MIN_BINS, min(MAX_BINS, math.ceil(math.sqrt(n))))
    width = 2 * iqr / (n ** (1 / 3))
    return max(MIN_BINS, min(MAX_BINS, math.ceil(span / width)))


def _histogram_object(measure_id: str, title: str, values: list[float]) -> ReportObject | None:
    values = [v for v in values if v is not None]
    if not values:
        return None
    edges, counts = histogram(values, freedman_diaconis_bins(values))
    return ReportObject(measure_id, HISTOGRAM, title, {"bin_edges": edges, "counts": counts})


def _per_model_values(per_model: dict, measure_id: str, *path: str) -> list:
    values = []
    for model_id in sorted(per_model):
        entry = per_model[model_id].get(measure_id)
        if entry is None:
            continue
        value = entry
        for key in path:
            if not isinstance(value, dict) or key not in value:
                value = None
                break
            value = value[key]
        if value is not None:
            values.append(value)
    return values


def _display_score(score: float, decimals: int) -> str:
    return f"{score:.{decimals}f}" if decimals else str(round(score))


def build_report(measures: dict, per_model: dict, top_n: int = DEFAULT_TOP_N) -> list[ReportObject]:
    """Derive the report objects; a pure function of the two measure artifacts."""
    dataset = measures.get("dataset", {})
    objects: list[ReportObject] = []

    def metrics_of(measure_id: str) -> dict | None:
        entry = dataset.get(measure_id)
        if entry is None or "notice" in entry.get("metrics", {}):
            return None
        return entry["metrics"]

    # --- D1 parse evidence
    m1 = metrics_of("d1.m1")
    if m1 is not None:
        objects.append(ReportObject("d1.m1", KPI, "Models", {"value": m1["n_models"]}))
        score = dataset["d1.m1"].get("score")
        if score is not None:
            objects.append(
                ReportObject(
                    "d1.m1",
                    SCORE_BADGE,
                    "Parse status score",
                    {"value": score, "display": _display_score(score, 0)},
                )
            )
        objects.append(
            ReportObject(
                "d1.m1",
                BAR,
                "Parse status distribution",
                {
                    "categories": ["success", "partial", "failure"],
                    "values": [m1["n_success"], m1["n_partial"], m1["n_failed"]],
                },
            )
        )
        rows = []
        for model_id in sorted(per_model):
            entry = per_model[model_id].get("d1.m1")
            if entry is None or entry.get("parse_status") == "success":
                continue
            warnings_entry = per_model[model_id].get("d1.m5", {})
            rows.append(
                {
                    "model_id": model_id,
                    "status": entry.get("parse_status"),
                    "error_msg": entry.get("parse_error_msg"),
                    "n_warnings": warnings_entry.get("n_warnings"),
                }
            )
        rows.sort(key=lambda r: (0 if r["status"] == "failure" else 1, r["model_id"]))
        objects.append(
            ReportObject(
                "d1.m1",
                TABLE,
                "Problem models",
                {"columns": ["model_id", "status", "error_msg", "n_warnings"], "rows": rows},
            )
        )

    m5 = metrics_of("d1.m5")
    if m5 is not None:
        by_type = m5.get("warnings_by_type", {})
        categories = sorted(by_type)
        objects.append(
            ReportObject(
                "d1.m5",
                BAR,
                "Warnings by type",
                {"categories": categories, "values": [by_type[c] for c in categories]},
            )
        )

    # --- D2 lexical
    m = metrics_of("d2.m1")
    if m is not None and m.get("presence_share") is not None:
        objects.append(
            ReportObject(
                "d2.m1",
                SCORE_BADGE,
                "Label presence score",
                {"value": dataset["d2.m1"]["score"], "display": _display_score(dataset["d2.m1"]["score"], 1)},
            )
        )
    if metrics_of("d2.m2") is not None:
        obj = _histogram_object("d2.m2", "Median label length per model (chars)",
                                _per_model_values(per_model, "d2.m2", "chars", "median"))
        if obj:
            objects.append(obj)
        obj = _histogram_object("d2.m2", "Median label length per model (tokens)",
                                _per_model_values(per_model, "d2.m2", "tokens", "median"))
        if obj:
            objects.append(obj)
    m = metrics_of("d2.m5")
    if m is not None:
        by_language = m.get("models_by_language", {})
        categories = sorted(by_language)
        objects.append(
            ReportObject(
                "d2.m5",
                BAR,
                "Models by predominant language",
                {"categories": categories, "values": [by_language[c] for c in categories]},
            )
        )

    # --- D3 constructs
    m = metrics_of("d3.m1")
    if m is not None:
        observed = m.get("observed_by_construct", {})
        row_labels = sorted(observed)
        cells = [[observed[cid]] for cid in row_labels]
        objects.append(
            ReportObject(
                "d3.m1",
                MATRIX,
                "Construct presence",
                {"row_labels": row_labels, "col_labels": ["present"], "cells": cells},
            )
        )
    m = metrics_of("d3.m2")
    if m is not None:
        freq = m.get("frequency_by_construct", {})
        ranked = sorted(freq.items(), key=lambda kv: (-kv[1], kv[0]))[:top_n]
        objects.append(
            ReportObject(
                "d3.m2",
                TABLE,
                f"Top {top_n} construct frequencies",
                {"columns": ["construct", "count"], "rows": [{"construct": c, "count": n} for c, n in ranked]},
            )
        )
        score = dataset["d3.m2"].get("score")
        if score is not None:
            objects.append(
                ReportObject(
                    "d3.m2",
                    SCORE_BADGE,
                    "Construct balance score",
                    {"value": score, "display": _display_score(score, 1)},
                )
            )

    # --- D4 size
    if metrics_of("d4.m1") is not None:
        obj = _histogram_object("d4.m1", "Elements per model",
                                _per_model_values(per_model, "d4.m1", "n_elements"))
        if obj:
            objects.append(obj)
        points = []
        for model_id in sorted(per_model):
            entry = per_model[model_id].get("d4.m1")
            if entry is None:
                continue
            points.append({"model_id": model_id, "x": entry["n_elements"], "y": entry["n_edges"]})
        objects.append(
            ReportObject(
                "d4.m1",
                SCATTER,
                "Elements vs edges",
                {"x_label": "n_elements", "y_label": "n_edges", "points": points},
            )
        )
    if metrics_of("d4.m2") is not None:
        obj = _histogram_object("d4.m2", "Mean degree per model",
                                _per_model_values(per_model, "d4.m2", "mean_degree"))
        if obj:
            objects.append(obj)
    if metrics_of("d4.m4") is not None:
        obj = _histogram_object("d4.m4", "Containment depth per model (max)",
                                _per_model_values(per_model, "d4.m4", "max_depth"))
        if obj:
            objects.append(obj)

    return objects


def run_report(profile: BenchmarkProfile, measures: dict, per_model: dict,
               output_path: Path | None = None) -> dict:
    top_n = profile.report.get("top_n", DEFAULT_TOP_N)
    objects = build_report(measures, per_model, top_n=top_n)
    payload = {
        "objects": [o.to_json_dict() for o in objects],
        "generated_for": profile.name,
        "profile_version": profile.version,
    }
    out = Path(output_path) if output_path is not None else profile.resolved_output_path()
    write_artifact(payload, out / REPORT)
    return payload

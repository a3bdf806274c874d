"""Metric value container and the measure store persisted by the measure stage."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .stats import DistributionStats

MODEL = "model"
DATASET = "dataset"

MEASURE_IDS = (
    "d1.m1", "d1.m2", "d1.m3", "d1.m4", "d1.m5",
    "d2.m1", "d2.m2", "d2.m3", "d2.m4", "d2.m5",
    "d3.m1", "d3.m2",
    "d4.m1", "d4.m2", "d4.m3", "d4.m4",
)

# Measures carrying a score; the rest are purely descriptive.
SCORED_MEASURES = ("d1.m1", "d1.m2", "d1.m5", "d2.m1", "d3.m1", "d3.m2")

_DISTRIBUTION_KEYS = {"min", "max", "mean", "median", "p75", "count"}


@dataclass(frozen=True)
class MetricValue:
    """One computed metric: a scalar, a distribution summary, or a name→number map."""

    measure_id: str
    metric_name: str
    level: str  # model | dataset
    value: Any

    def __post_init__(self) -> None:
        if self.level not in (MODEL, DATASET):
            raise ValueError(f"invalid metric level {self.level!r}")
        value = self.value
        if isinstance(value, DistributionStats):
            object.__setattr__(self, "value", value.to_json_dict())
        elif isinstance(value, dict) and ("median" in value or "p75" in value):
            missing = _DISTRIBUTION_KEYS - set(value.keys())
            if missing:
                raise ValueError(f"distribution summary missing keys: {sorted(missing)}")


class MeasureStore:
    """Accumulates metric values and serializes measures.json / measures_per_model.json."""

    def __init__(self) -> None:
        self.dataset: dict[str, dict] = {}
        self.per_model: dict[str, dict[str, dict]] = {}
        self.dimension_scores: dict[str, float] = {}

    def add(self, metric: MetricValue, model_id: str | None = None) -> None:
        if metric.level == DATASET:
            entry = self.dataset.setdefault(metric.measure_id, {"metrics": {}, "score": None})
            entry["metrics"][metric.metric_name] = metric.value
        else:
            if model_id is None:
                raise ValueError("model-level metric requires a model_id")
            bucket = self.per_model.setdefault(model_id, {}).setdefault(metric.measure_id, {})
            bucket[metric.metric_name] = metric.value

    def add_dataset_metrics(self, measure_id: str, metrics: dict[str, Any], score: float | None = None) -> None:
        for name, value in metrics.items():
            self.add(MetricValue(measure_id, name, DATASET, value))
        if score is not None:
            self.set_score(measure_id, score)
        else:
            self.dataset.setdefault(measure_id, {"metrics": {}, "score": None})

    def add_model_metrics(self, measure_id: str, model_id: str, metrics: dict[str, Any]) -> None:
        for name, value in metrics.items():
            self.add(MetricValue(measure_id, name, MODEL, value), model_id=model_id)

    def set_score(self, measure_id: str, score: float) -> None:
        if not 0.0 <= score <= 100.0:
            raise ValueError(f"score out of range for {measure_id}: {score}")
        entry = self.dataset.setdefault(measure_id, {"metrics": {}, "score": None})
        entry["score"] = score

    def score_of(self, measure_id: str) -> float | None:
        entry = self.dataset.get(measure_id)
        return None if entry is None else entry.get("score")

    def to_measures_json(self) -> dict:
        return {
            "dataset": {mid: self.dataset[mid] for mid in sorted(self.dataset)},
            "dimension_scores": dict(self.dimension_scores),
        }

    def to_per_model_json(self) -> dict:
        return {
            model_id: {mid: metrics for mid, metrics in sorted(self.per_model[model_id].items())}
            for model_id in sorted(self.per_model)
        }

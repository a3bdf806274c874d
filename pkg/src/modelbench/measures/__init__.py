"""Measure stage: executes the enabled measures and persists the evidence files.

D1 is computed from ir_info alone; D2-D4 operate on the IR graphs of
non-failed models (parse status gatekeeping).  measures.json stores
dataset-level metrics and scores, measures_per_model.json the per-model
metrics keyed by model id.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

from ..artifacts import MEASURES, MEASURES_PER_MODEL, write_artifact
from ..catalog import ConstructCatalog, load_builtin_catalog, load_catalog_file
from ..errors import MissingCatalog
from ..ir import IRGraph
from ..metrics import MeasureStore
from ..profile import BenchmarkProfile
from .d1 import (
    MeasureResult,
    d1_m1_parse_status,
    d1_m2_loaded_vs_skipped,
    d1_m3_parse_time,
    d1_m4_file_size,
    d1_m5_warnings,
)
from .d2 import (
    d2_m1_label_presence,
    d2_m2_label_length,
    d2_m3_word_mix,
    d2_m4_lexical_diversity,
    d2_m5_language_usage,
)
from .d3 import d3_m1_construct_presence, d3_m2_construct_frequency
from .d4 import d4_m1_model_size, d4_m2_degree, d4_m3_connectivity, d4_m4_containment_depth
from .langdetect import TrigramDetector

NO_ELIGIBLE_MODELS = "no eligible models"


def _default_detector():
    try:
        return TrigramDetector()
    except Exception:
        return None


def aggregate_dimension_scores(store: MeasureStore) -> dict[str, float]:
    """Arithmetic mean of the scored measures per dimension; unscored dimensions are omitted."""
    scores: dict[str, float] = {}
    for dim in ("d1", "d2", "d3", "d4"):
        values = [
            entry["score"]
            for measure_id, entry in store.dataset.items()
            if measure_id.startswith(dim + ".") and entry.get("score") is not None
        ]
        if values:
            scores[dim] = sum(values) / len(values)
    return scores


def resolve_catalog(profile: BenchmarkProfile) -> ConstructCatalog:
    """Catalog from the profile's constructs.catalog_path, else the parser language's built-in."""
    cfg = profile.measure.constructs
    if cfg.catalog_path:
        return load_catalog_file(profile.resolve(cfg.catalog_path))
    from ..parsing import select_parser

    descriptor = select_parser(profile.parse.parser_language)
    return load_builtin_catalog(descriptor.language)


def run_measure(
    profile: BenchmarkProfile,
    ir_info: dict,
    graphs: Sequence[IRGraph],
    catalog: ConstructCatalog | None = None,
    detector=None,
    output_path: Path | None = None,
) -> MeasureStore:
    measure_cfg = profile.measure
    store = MeasureStore()

    def apply(result: MeasureResult) -> None:
        store.add_dataset_metrics(result.measure_id, result.metrics, result.score)
        for model_id, metrics in result.per_model.items():
            store.add_model_metrics(result.measure_id, model_id, metrics)

    def apply_empty(measure_id: str) -> None:
        store.add_dataset_metrics(measure_id, {"notice": NO_ELIGIBLE_MODELS}, None)

    parse_cfg = measure_cfg.parse
    if parse_cfg.enabled:
        if parse_cfg.enable_d1_m1:
            apply(d1_m1_parse_status(ir_info))
        if parse_cfg.enable_d1_m2:
            apply(d1_m2_loaded_vs_skipped(ir_info))
        if parse_cfg.enable_d1_m3:
            apply(d1_m3_parse_time(ir_info))
        if parse_cfg.enable_d1_m4:
            apply(d1_m4_file_size(ir_info))
        if parse_cfg.enable_d1_m5:
            apply(d1_m5_warnings(ir_info))

    lexical = measure_cfg.lexical
    if lexical.enabled:
        if not graphs:
            for i in range(1, 6):
                if getattr(lexical, f"enable_d2_m{i}"):
                    apply_empty(f"d2.m{i}")
        else:
            if lexical.enable_d2_m1:
                apply(d2_m1_label_presence(graphs, lexical))
            if lexical.enable_d2_m2:
                apply(d2_m2_label_length(graphs, lexical))
            if lexical.enable_d2_m3:
                apply(d2_m3_word_mix(graphs, lexical))
            if lexical.enable_d2_m4:
                apply(d2_m4_lexical_diversity(graphs, lexical))
            if lexical.enable_d2_m5:
                active = detector if detector is not None else _default_detector()
                if active is None:
                    # detector problems skip the measure, never fail the run
                    store.add_dataset_metrics("d2.m5", {"notice": "language detector unavailable"}, None)
                else:
                    apply(d2_m5_language_usage(graphs, lexical, active))

    constructs = measure_cfg.constructs
    if constructs.enabled and (constructs.enable_d3_m1 or constructs.enable_d3_m2):
        if not graphs:
            for i in (1, 2):
                if getattr(constructs, f"enable_d3_m{i}"):
                    apply_empty(f"d3.m{i}")
        else:
            if catalog is None:
                catalog = resolve_catalog(profile)
            if catalog is None:
                raise MissingCatalog("construct measures enabled but no catalog resolves")
            if constructs.enable_d3_m1:
                apply(d3_m1_construct_presence(graphs, catalog))
            if constructs.enable_d3_m2:
                apply(d3_m2_construct_frequency(graphs, catalog))

    size = measure_cfg.size
    if size.enabled:
        if not graphs:
            for i in range(1, 5):
                if getattr(size, f"enable_d4_m{i}"):
                    apply_empty(f"d4.m{i}")
        else:
            if size.enable_d4_m1:
                apply(d4_m1_model_size(graphs))
            if size.enable_d4_m2:
                apply(d4_m2_degree(graphs))
            if size.enable_d4_m3:
                apply(d4_m3_connectivity(graphs))
            if size.enable_d4_m4:
                apply(d4_m4_containment_depth(graphs))

    store.dimension_scores = aggregate_dimension_scores(store)

    out = Path(output_path) if output_path is not None else profile.resolved_output_path()
    write_artifact(store.to_measures_json(), out / MEASURES)
    write_artifact(store.to_per_model_json(), out / MEASURES_PER_MODEL)
    return store

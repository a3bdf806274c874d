"""D3 Construct Coverage: presence and frequency against a construct catalog.

Both measures are catalog-bounded: elements whose (kind, type, data) match
no construct are reported as unknown and excluded from the frequency
distribution.  One element may match several constructs (a base metaclass
plus refinements), so construct instances can exceed element counts.
"""

from __future__ import annotations

import math
from typing import Sequence

from ..catalog import ConstructCatalog
from ..ir import IRGraph
from .d1 import MeasureResult


def utilization_entropy(frequencies: Sequence[float], catalog_size: int) -> float:
    """Shannon entropy of the construct distribution, normalized by ln(catalog size).

    Zero-frequency constructs contribute 0; the result is 1 exactly when
    usage is uniform over the whole catalog.
    """
    if catalog_size < 2:
        raise ValueError("utilization entropy needs a catalog of at least 2 constructs")
    total = float(sum(frequencies))
    if total <= 0:
        raise ValueError("utilization entropy needs at least one instance")
    h = 0.0
    for freq in frequencies:
        if freq > 0:
            p = freq / total
            h -= p * math.log(p)
    return h / math.log(catalog_size)


def entropy_score(frequencies: Sequence[float], catalog_size: int) -> float:
    return utilization_entropy(frequencies, catalog_size) * 100.0


def construct_presence_score(coverage_share: float, unknown_share: float) -> float:
    return coverage_share * 100.0 * (1.0 - unknown_share)


def d3_m1_construct_presence(graphs: Sequence[IRGraph], catalog: ConstructCatalog) -> MeasureResult:
    observed: set[str] = set()
    unknown_nodes = 0
    unknown_edges = 0
    unknown_detail: dict[str, int] = {}
    total_instances = 0
    per_model: dict[str, dict] = {}

    for graph in graphs:
        model_constructs: set[str] = set()
        for kind, elements in (("node", graph.nodes), ("edge", graph.edges)):
            for element in elements:
                total_instances += 1
                matched = catalog.match_element(element)
                if matched:
                    model_constructs.update(c.id for c in matched)
                else:
                    if kind == "node":
                        unknown_nodes += 1
                    else:
                        unknown_edges += 1
                    key = f"{kind}:{element.type}"
                    unknown_detail[key] = unknown_detail.get(key, 0) + 1
        per_model[graph.id] = {"coverage_share": len(model_constructs) / catalog.size if catalog.size else None}
        observed.update(model_constructs)

    groups: dict[str, list] = {}
    for construct in catalog.constructs:
        groups.setdefault(construct.group, []).append(construct.id)
    coverage_by_group = {
        group: sum(1 for cid in ids if cid in observed) / len(ids)
        for group, ids in sorted(groups.items())
    }

    coverage = len(observed) / catalog.size if catalog.size else None
    unknown_share = (unknown_nodes + unknown_edges) / total_instances if total_instances else 0.0
    metrics = {
        "catalog_size": catalog.size,
        "observed_constructs": len(observed),
        "dataset_coverage": coverage,
        "coverage_by_group": coverage_by_group,
        "observed_by_construct": {c.id: (1 if c.id in observed else 0) for c in catalog.constructs},
        "unknown_node_types": unknown_nodes,
        "unknown_edge_types": unknown_edges,
        "unknown_types_detail": unknown_detail,
        "unknown_share": unknown_share,
    }
    score = construct_presence_score(coverage, unknown_share) if coverage is not None else None
    return MeasureResult("d3.m1", metrics, score, per_model)


def d3_m2_construct_frequency(graphs: Sequence[IRGraph], catalog: ConstructCatalog) -> MeasureResult:
    frequency = {construct.id: 0 for construct in catalog.constructs}
    for graph in graphs:
        for element in list(graph.nodes) + list(graph.edges):
            for construct in catalog.match_element(element):
                frequency[construct.id] += 1
    total = sum(frequency.values())
    metrics: dict = {"total_instances": total, "frequency_by_construct": frequency}
    score = None
    if total > 0 and catalog.size >= 2:
        entropy = utilization_entropy(list(frequency.values()), catalog.size)
        metrics["utilization_entropy"] = entropy
        score = entropy * 100.0
    else:
        metrics["utilization_entropy"] = None
    return MeasureResult("d3.m2", metrics, score, {})

"""D4 Size: structural size, degree, connectivity, and containment depth over the IR."""

from __future__ import annotations

from typing import Sequence

from ..ir import IRGraph
from ..stats import DistributionStats
from .d1 import MeasureResult


def node_degrees(graph: IRGraph) -> dict[str, int]:
    """Incident-edge count per node; edges are undirected, a self-loop counts 2."""
    degrees = {node.id: 0 for node in graph.nodes}
    for edge in graph.edges:
        degrees[edge.source] += 1
        degrees[edge.target] += 1
    return degrees


def connected_components(graph: IRGraph) -> list[set[str]]:
    """Weakly connected components over the undirected view of the graph."""
    adjacency: dict[str, set[str]] = {node.id: set() for node in graph.nodes}
    for edge in graph.edges:
        adjacency[edge.source].add(edge.target)
        adjacency[edge.target].add(edge.source)
    components: list[set[str]] = []
    seen: set[str] = set()
    for node in graph.nodes:
        if node.id in seen:
            continue
        component = {node.id}
        stack = [node.id]
        seen.add(node.id)
        while stack:
            current = stack.pop()
            for neighbor in adjacency[current]:
                if neighbor not in seen:
                    seen.add(neighbor)
                    component.add(neighbor)
                    stack.append(neighbor)
        components.append(component)
    return components


def containment_depths(graph: IRGraph) -> tuple[dict[str, int], bool]:
    """Depths along containment edges by synchronous relaxation.

    depth(node without containment parent) = 0; depth(child) = max over
    parents of depth(parent) + 1.  Relaxation runs at most n_nodes rounds;
    on a containment cycle it cannot stabilize and the result is capped
    (depth values bounded by n_nodes) with the capped flag set.
    """
    parents: dict[str, list[str]] = {node.id: [] for node in graph.nodes}
    children: dict[str, list[str]] = {node.id: [] for node in graph.nodes}
    for edge in graph.edges:
        if edge.is_containment:
            parents[edge.target].append(edge.source)
            children[edge.source].append(edge.target)

    depth = {node_id: 0 for node_id in parents}
    n_nodes = len(depth)
    pending = set(depth)
    capped = n_nodes > 0
    for _ in range(n_nodes):
        updates: dict[str, int] = {}
        for node_id in pending:
            if parents[node_id]:
                new_depth = max(depth[p] for p in parents[node_id]) + 1
                if new_depth != depth[node_id]:
                    updates[node_id] = new_depth
        if not updates:
            capped = False
            break
        depth.update(updates)
        pending = {child for node_id in updates for child in children[node_id]}
    return depth, capped


def d4_m1_model_size(graphs: Sequence[IRGraph]) -> MeasureResult:
    per_model: dict[str, dict] = {}
    nodes_list: list[int] = []
    edges_list: list[int] = []
    elements_list: list[int] = []
    ratios: list[float] = []
    for graph in graphs:
        n_nodes = len(graph.nodes)
        n_edges = len(graph.edges)
        ratio = n_edges / n_nodes if n_nodes else None
        per_model[graph.id] = {
            "n_nodes": n_nodes,
            "n_edges": n_edges,
            "n_elements": n_nodes + n_edges,
            "edge_node_ratio": ratio,
        }
        nodes_list.append(n_nodes)
        edges_list.append(n_edges)
        elements_list.append(n_nodes + n_edges)
        if ratio is not None:
            ratios.append(ratio)
    metrics = {
        "n_nodes": DistributionStats.from_values(nodes_list).to_json_dict(),
        "n_edges": DistributionStats.from_values(edges_list).to_json_dict(),
        "n_elements": DistributionStats.from_values(elements_list).to_json_dict(),
        "edge_node_ratio": DistributionStats.from_values(ratios).to_json_dict(),
    }
    return MeasureResult("d4.m1", metrics, None, per_model)


def d4_m2_degree(graphs: Sequence[IRGraph]) -> MeasureResult:
    per_model: dict[str, dict] = {}
    means: list[float] = []
    medians: list[float] = []
    for graph in graphs:
        degrees = sorted(node_degrees(graph).values())
        if not degrees:
            per_model[graph.id] = {"mean_degree": None, "median_degree": None}
            continue
        stats = DistributionStats.from_values(degrees)
        per_model[graph.id] = {"mean_degree": stats.mean, "median_degree": stats.median}
        means.append(stats.mean)
        medians.append(stats.median)
    metrics = {
        "mean_degree": DistributionStats.from_values(means).to_json_dict(),
        "median_degree": DistributionStats.from_values(medians).to_json_dict(),
    }
    return MeasureResult("d4.m2", metrics, None, per_model)


def d4_m3_connectivity(graphs: Sequence[IRGraph]) -> MeasureResult:
    per_model: dict[str, dict] = {}
    component_counts: list[int] = []
    largest_sizes: list[int] = []
    isolated_counts: list[int] = []
    isolated_shares: list[float] = []
    for graph in graphs:
        components = connected_components(graph)
        degrees = node_degrees(graph)
        n_isolated = sum(1 for d in degrees.values() if d == 0)
        n_nodes = len(graph.nodes)
        largest = max((len(c) for c in components), default=0)
        share = n_isolated / n_nodes if n_nodes else None
        per_model[graph.id] = {
            "n_components": len(components),
            "largest_component_size": largest,
            "n_isolated": n_isolated,
            "isolated_share": share,
        }
        component_counts.append(len(components))
        largest_sizes.append(largest)
        isolated_counts.append(n_isolated)
        if share is not None:
            isolated_shares.append(share)
    metrics = {
        "n_components": DistributionStats.from_values(component_counts).to_json_dict(),
        "largest_component_size": DistributionStats.from_values(largest_sizes).to_json_dict(),
        "n_isolated": DistributionStats.from_values(isolated_counts).to_json_dict(),
        "isolated_share": DistributionStats.from_values(isolated_shares).to_json_dict(),
    }
    return MeasureResult("d4.m3", metrics, None, per_model)


def d4_m4_containment_depth(graphs: Sequence[IRGraph]) -> MeasureResult:
    per_model: dict[str, dict] = {}
    max_depths: list[int] = []
    mean_depths: list[float] = []
    contained_shares: list[float] = []
    root_counts: list[int] = []
    n_capped = 0
    for graph in graphs:
        depths, capped = containment_depths(graph)
        n_nodes = len(graph.nodes)
        contained = {edge.target for edge in graph.edges if edge.is_containment}
        n_roots = n_nodes - len(contained & set(depths))
        max_depth = max(depths.values(), default=0)
        mean_depth = sum(depths.values()) / n_nodes if n_nodes else None
        contained_share = len(contained & set(depths)) / n_nodes if n_nodes else None
        per_model[graph.id] = {
            "max_depth": max_depth,
            "mean_depth": mean_depth,
            "contained_share": contained_share,
            "n_roots": n_roots,
            "depth_capped": capped,
        }
        max_depths.append(max_depth)
        root_counts.append(n_roots)
        if mean_depth is not None:
            mean_depths.append(mean_depth)
        if contained_share is not None:
            contained_shares.append(contained_share)
        if capped:
            n_capped += 1
    metrics = {
        "max_depth": DistributionStats.from_values(max_depths).to_json_dict(),
        "mean_depth": DistributionStats.from_values(mean_depths).to_json_dict(),
        "contained_share": DistributionStats.from_values(contained_shares).to_json_dict(),
        "n_roots": DistributionStats.from_values(root_counts).to_json_dict(),
        "models_depth_capped": n_capped,
    }
    return MeasureResult("d4.m4", metrics, None, per_model)

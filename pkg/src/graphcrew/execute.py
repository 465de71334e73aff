"""Bridge from catalogue records to native solver calls.

Node limits live in the catalogue's applicability blocks and are passed
through to the solvers here, so a custom catalogue with tighter or wider
limits changes runtime behavior without touching solver code.
"""

from __future__ import annotations

from typing import Any

from .knowledge import AlgorithmChoice, AlgorithmRecord
from .graph import Graph, GraphError
from .solvers import (
    Solution,
    coloring_dsatur,
    coloring_exact,
    detect_cycle,
    shortest_path_dijkstra,
    tsp_exact_held_karp,
    tsp_nearest_neighbor_two_opt,
    vertex_cover_approx,
    vertex_cover_exact,
)


class UnknownAlgorithmError(ValueError):
    pass


def run_algorithm(
    record: AlgorithmRecord | AlgorithmChoice,
    graph: Graph,
    *,
    source: str | None = None,
    target: str | None = None,
    parameters: dict[str, Any] | None = None,
) -> Solution:
    """Run the solver a catalogue record points at.

    ``parameters`` override the record's defaults.  Shortest-path records
    additionally need ``source`` and ``target``.
    """
    overrides = dict(parameters or {})
    if isinstance(record, AlgorithmChoice):
        merged = dict(record.bound_parameters)
        merged.update(overrides)
        overrides = merged
        record = record.record
    params = {name: spec.default for name, spec in record.parameters.items()}
    params.update(overrides)
    limit = record.applicability.max_nodes
    aid = record.algorithm_id

    if aid == "held_karp":
        return tsp_exact_held_karp(graph, max_nodes=limit)
    if aid == "nearest_neighbor_2opt":
        return tsp_nearest_neighbor_two_opt(graph, start=params.get("start", 0))
    if aid == "exact_coloring":
        return coloring_exact(graph, max_nodes=limit)
    if aid == "dsatur":
        return coloring_dsatur(graph)
    if aid == "bnb_cover":
        return vertex_cover_exact(graph, max_nodes=limit)
    if aid == "matching_cover":
        return vertex_cover_approx(graph)
    if aid == "dijkstra":
        if source is None or target is None:
            raise GraphError("dijkstra needs a source and a target node")
        return shortest_path_dijkstra(graph, source, target)
    if aid == "cycle_check":
        return detect_cycle(graph)
    raise UnknownAlgorithmError(f"no runner for algorithm {aid!r}")

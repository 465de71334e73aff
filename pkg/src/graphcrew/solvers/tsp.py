"""Tour solvers for complete undirected graphs.

Exact routes: a permutation scan for tiny inputs and Held-Karp dynamic
programming up to a configurable node limit.  Heuristic routes: nearest
neighbor and first-improvement 2-opt, used alone or chained.  All
arithmetic stays exact (int or Fraction); every tie is broken toward the
lower node index, so repeated runs return identical tours.
"""

from __future__ import annotations

from itertools import permutations

from ..graph import Graph, GraphError, Weight, graph_stats
from ..problems import TOUR
from .solution import (
    GraphNotCompleteError,
    Solution,
    TooLargeError,
    canonical_tour,
)

BRUTE_FORCE_LIMIT = 10
HELD_KARP_LIMIT = 16

_INF = float("inf")


def _require_tour_input(graph: Graph) -> None:
    if graph.directed:
        raise GraphError("tour solvers need an undirected graph")
    if graph.node_count < 3:
        raise GraphError(f"a tour needs at least 3 nodes, got {graph.node_count}")
    if not graph_stats(graph).is_complete:
        raise GraphNotCompleteError(
            f"graph with {graph.node_count} nodes and {graph.edge_count} edges is not complete"
        )


def _matrix(graph: Graph) -> list[list[Weight]]:
    n = graph.node_count
    wm = graph.weight_map
    return [[0 if i == j else wm[(i, j)] for j in range(n)] for i in range(n)]


def tour_cost(graph: Graph, order: tuple[str, ...] | list[str]) -> Weight:
    """Exact cost of the closed tour visiting ``order`` and returning home."""
    idx = [graph.index_of(name) for name in order]
    cost: Weight = 0
    for a, b in zip(idx, idx[1:] + idx[:1]):
        cost = cost + graph.weight(a, b)
    return cost


def _as_start_index(graph: Graph, start: str | int) -> int:
    if isinstance(start, str):
        return graph.index_of(start)
    if 0 <= start < graph.node_count:
        return int(start)
    raise GraphError(f"start index {start} out of range")


def tsp_brute_force(graph: Graph) -> Solution:
    """Scan every tour from a fixed start; first permutation wins ties.

    Only sensible for very small graphs; refuses more than
    ``BRUTE_FORCE_LIMIT`` nodes.
    """
    _require_tour_input(graph)
    n = graph.node_count
    if n > BRUTE_FORCE_LIMIT:
        raise TooLargeError(n, BRUTE_FORCE_LIMIT)
    w = _matrix(graph)
    best_cost: Weight | None = None
    best_order: tuple[int, ...] | None = None
    for perm in permutations(range(1, n)):
        cost: Weight = w[0][perm[0]]
        for a, b in zip(perm, perm[1:]):
            cost = cost + w[a][b]
        cost = cost + w[perm[-1]][0]
        if best_cost is None or cost < best_cost:
            best_cost = cost
            best_order = (0,) + perm
    order = canonical_tour(tuple(graph.node_names[i] for i in best_order))
    return Solution(TOUR, order, best_cost, "brute_force_tour", exact=True)


def tsp_exact_held_karp(graph: Graph, max_nodes: int = HELD_KARP_LIMIT) -> Solution:
    """Held-Karp subset dynamic program, O(n^2 * 2^n).

    ``dp[mask][i]`` is the cheapest way to start at node 0, visit exactly
    the nodes in ``mask``, and stand at ``i``.  Parents are recorded for
    tour reconstruction; strict-improvement updates plus ascending scan
    order make the reconstructed tour deterministic.
    """
    _require_tour_input(graph)
    n = graph.node_count
    if n > max_nodes:
        raise TooLargeError(n, max_nodes)
    w = _matrix(graph)
    full = 1 << n
    dp: list[list[Weight | float]] = [[_INF] * n for _ in range(full)]
    parent: list[list[int]] = [[-1] * n for _ in range(full)]
    dp[1][0] = 0
    for mask in range(1, full):
        row = dp[mask]
        for i in range(n):
            cost_i = row[i]
            if cost_i is _INF or not (mask >> i) & 1:
                continue
            w_i = w[i]
            for j in range(n):
                if (mask >> j) & 1:
                    continue
                nxt = mask | (1 << j)
                cand = cost_i + w_i[j]
                if cand < dp[nxt][j]:
                    dp[nxt][j] = cand
                    parent[nxt][j] = i
    last_mask = full - 1
    best_cost: Weight | None = None
    best_last = -1
    for j in range(1, n):
        if dp[last_mask][j] is _INF:
            continue
        total = dp[last_mask][j] + w[j][0]
        if best_cost is None or total < best_cost:
            best_cost = total
            best_last = j
    rev: list[int] = []
    mask, node = last_mask, best_last
    while node != -1:
        rev.append(node)
        mask, node = mask ^ (1 << node), parent[mask][node]
    rev.reverse()
    order = canonical_tour(tuple(graph.node_names[i] for i in rev))
    return Solution(TOUR, order, best_cost, "held_karp", exact=True)


def tsp_nearest_neighbor(graph: Graph, start: str | int = 0) -> Solution:
    """Greedy construction: always hop to the closest unvisited node.

    Distance ties go to the lower node index.
    """
    _require_tour_input(graph)
    n = graph.node_count
    s = _as_start_index(graph, start)
    wm = graph.weight_map
    order = [s]
    visited = {s}
    while len(order) < n:
        u = order[-1]
        nxt = min(
            (v for v in range(n) if v not in visited),
            key=lambda v: (wm[(u, v)], v),
        )
        order.append(nxt)
        visited.add(nxt)
    names = canonical_tour(tuple(graph.node_names[i] for i in order))
    return Solution(TOUR, names, tour_cost(graph, names), "nearest_neighbor", exact=False)


def tsp_two_opt(graph: Graph, tour: tuple[str, ...] | list[str]) -> Solution:
    """First-improvement 2-opt: reverse the first segment that shortens
    the tour, restart the scan, stop at a local optimum.

    Scans (i, j) pairs in ascending order over positions 1..n-1, keeping
    the start node pinned, so the local optimum reached is a function of
    the input tour alone.
    """
    _require_tour_input(graph)
    order = [graph.index_of(name) for name in tour]
    if sorted(order) != list(range(graph.node_count)):
        raise GraphError("2-opt needs a tour visiting every node exactly once")
    wm = graph.weight_map
    n = len(order)
    improved = True
    while improved:
        improved = False
        for i in range(1, n - 1):
            for j in range(i + 1, n):
                a, b = order[i - 1], order[i]
                c, d = order[j], order[(j + 1) % n]
                if a == c or b == d:
                    continue
                delta = (wm[(a, c)] + wm[(b, d)]) - (wm[(a, b)] + wm[(c, d)])
                if delta < 0:
                    order[i : j + 1] = reversed(order[i : j + 1])
                    improved = True
                    break
            if improved:
                break
    names = canonical_tour(tuple(graph.node_names[i] for i in order))
    return Solution(TOUR, names, tour_cost(graph, names), "two_opt", exact=False)


def tsp_nearest_neighbor_two_opt(graph: Graph, start: str | int = 0) -> Solution:
    """Nearest neighbor seed polished by 2-opt; the standard fast route."""
    seed = tsp_nearest_neighbor(graph, start)
    refined = tsp_two_opt(graph, seed.payload)
    return Solution(TOUR, refined.payload, refined.objective, "nearest_neighbor_2opt", exact=False)

"""Minimum vertex cover: branch and bound, plus the matching heuristic.

The exact search applies degree-0/degree-1 reductions at every node of
the search tree, prunes with a maximal-matching lower bound, and
branches on the highest-degree vertex (take it, or take its whole
neighborhood).  The heuristic takes both endpoints of a greedily built
maximal matching, a classic factor-2 answer.
"""

from __future__ import annotations

from ..graph import Graph, GraphError
from ..problems import NODE_SET
from .solution import Solution, TooLargeError

EXACT_COVER_LIMIT = 30


def _require_undirected(graph: Graph) -> None:
    if graph.directed:
        raise GraphError("vertex cover needs an undirected graph")


def _adjacency_sets(graph: Graph) -> dict[int, set[int]]:
    return {v: set(ns) for v, ns in enumerate(graph.adjacency)}


def _matching_lower_bound(adj: dict[int, set[int]]) -> int:
    taken: set[int] = set()
    size = 0
    for u in sorted(adj):
        if u in taken:
            continue
        for v in sorted(adj[u]):
            if v not in taken:
                taken.add(u)
                taken.add(v)
                size += 1
                break
    return size


def vertex_cover_approx(graph: Graph) -> Solution:
    """Endpoints of a maximal matching; at most twice the optimum."""
    _require_undirected(graph)
    matched: set[int] = set()
    for u, v, _ in graph.edges:
        if u not in matched and v not in matched:
            matched.add(u)
            matched.add(v)
    nodes = tuple(sorted(graph.node_names[v] for v in matched))
    return Solution(NODE_SET, nodes, len(nodes), "matching_cover", exact=False)


def vertex_cover_exact(graph: Graph, max_nodes: int = EXACT_COVER_LIMIT) -> Solution:
    """Minimum cover by branch and bound.

    Branch order is fixed (highest degree, then lowest index), updates
    require strict improvement, and reductions fire in index order, so
    the cover returned is the same every run.
    """
    _require_undirected(graph)
    n = graph.node_count
    if n > max_nodes:
        raise TooLargeError(n, max_nodes)
    seed = {graph.index_of(name) for name in vertex_cover_approx(graph).payload}
    best: set[int] = seed

    def search(adj: dict[int, set[int]], chosen: set[int]) -> None:
        nonlocal best
        # Reductions: drop isolated vertices; a degree-1 vertex forces
        # its neighbor into the cover.
        while True:
            isolated = [v for v in adj if not adj[v]]
            for v in isolated:
                del adj[v]
            leaf = next((v for v in sorted(adj) if len(adj[v]) == 1), None)
            if leaf is None:
                break
            neighbor = next(iter(adj[leaf]))
            chosen.add(neighbor)
            for u in list(adj[neighbor]):
                adj[u].discard(neighbor)
            del adj[neighbor]
        if not adj:
            if len(chosen) < len(best):
                best = set(chosen)
            return
        if len(chosen) + _matching_lower_bound(adj) >= len(best):
            return
        v = max(adj, key=lambda u: (len(adj[u]), -u))
        neighbors = sorted(adj[v])

        branch_adj = {u: set(ns) for u, ns in adj.items()}
        for u in branch_adj[v]:
            branch_adj[u].discard(v)
        del branch_adj[v]
        search(branch_adj, chosen | {v})

        branch_adj = {u: set(ns) for u, ns in adj.items()}
        for w in neighbors:
            for u in list(branch_adj[w]):
                branch_adj[u].discard(w)
            del branch_adj[w]
        search(branch_adj, chosen | set(neighbors))

    search(_adjacency_sets(graph), set())
    nodes = tuple(sorted(graph.node_names[v] for v in best))
    return Solution(NODE_SET, nodes, len(nodes), "bnb_cover", exact=True)

"""Cycle existence checks."""

from __future__ import annotations

from ..graph import Graph
from ..problems import BOOLEAN
from .solution import Solution


def _undirected_has_cycle(graph: Graph) -> bool:
    # Union-find over the canonical edge order.
    parent = list(range(graph.node_count))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v, _ in graph.edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            return True
        parent[ru] = rv
    return False


def _directed_has_cycle(graph: Graph) -> bool:
    # Iterative DFS; a back edge into the active stack means a cycle.
    n = graph.node_count
    adj = graph.adjacency
    WHITE, GRAY, BLACK = 0, 1, 2
    state = [WHITE] * n
    for root in range(n):
        if state[root] != WHITE:
            continue
        stack: list[tuple[int, int]] = [(root, 0)]
        state[root] = GRAY
        while stack:
            u, i = stack.pop()
            if i < len(adj[u]):
                stack.append((u, i + 1))
                v = adj[u][i]
                if state[v] == GRAY:
                    return True
                if state[v] == WHITE:
                    state[v] = GRAY
                    stack.append((v, 0))
            else:
                state[u] = BLACK
    return False


def detect_cycle(graph: Graph) -> Solution:
    """Does the graph contain any cycle (directed cycles for directed graphs)?"""
    found = _directed_has_cycle(graph) if graph.directed else _undirected_has_cycle(graph)
    return Solution(BOOLEAN, found, int(found), "cycle_check", exact=True)

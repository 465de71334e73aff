"""Small seeded graph builders shared across solver tests."""

import random

from graphcrew.graph import build_graph, graph_stats


def names_for(n):
    return [f"N{i:02d}" for i in range(n)]


def complete_graph(n, seed, low=1, high=100):
    rng = random.Random(seed)
    names = names_for(n)
    edges = [
        (names[i], names[j], rng.randint(low, high))
        for i in range(n)
        for j in range(i + 1, n)
    ]
    return build_graph(names, False, True, edges)


def gnp_graph(n, p, seed, weighted=False, directed=False, connected=False):
    rng = random.Random(seed)
    names = names_for(n)
    while True:
        edges = []
        if directed:
            pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
        else:
            pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        for i, j in pairs:
            if rng.random() < p:
                if weighted:
                    edges.append((names[i], names[j], rng.randint(1, 100)))
                else:
                    edges.append((names[i], names[j]))
        g = build_graph(names, directed, weighted, edges)
        if not connected or graph_stats(g).is_connected:
            return g

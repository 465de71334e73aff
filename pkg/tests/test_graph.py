from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from graphcrew.graph import (
    ConflictingWeightsError,
    DuplicateEdgeError,
    DuplicateNodeError,
    Graph,
    GraphError,
    NegativeWeightError,
    SelfLoopError,
    UnknownEndpointError,
    build_graph,
    coerce_weight,
    format_weight,
    graph_stats,
    merge_edge_triples,
)

NAME_POOL = [f"N{c}{d}" for c in "abcdef" for d in "abcdef"]


@st.composite
def graph_parts(draw, min_nodes=1, max_nodes=8, weighted=None, allow_zero=True):
    n = draw(st.integers(min_nodes, max_nodes))
    names = list(draw(st.permutations(NAME_POOL[:max_nodes])))[:n]
    directed = draw(st.booleans())
    if weighted is None:
        weighted = draw(st.booleans())
    if directed:
        pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    else:
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    if pairs:
        chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs)))
    else:
        chosen = []
    weights = st.one_of(
        st.integers(0 if allow_zero else 1, 30),
        st.fractions(min_value=Fraction(1, 9), max_value=30, max_denominator=9),
    )
    edges = []
    for i, j in chosen:
        w = draw(weights) if weighted else 1
        edges.append((names[i], names[j], w))
    return names, directed, weighted, edges


@given(graph_parts())
def test_canonical_ordering(parts):
    names, directed, weighted, edges = parts
    g = build_graph(names, directed, weighted, edges)
    assert g.node_names == tuple(sorted(names))
    assert list(g.edges) == sorted(g.edges)
    if not directed:
        assert all(u < v for u, v, _ in g.edges)
    for _, _, w in g.edges:
        assert isinstance(w, (int, Fraction)) and not isinstance(w, bool)
        if isinstance(w, Fraction):
            assert w.denominator != 1


@given(graph_parts())
def test_rebuild_from_canonical_parts_is_identity(parts):
    names, directed, weighted, edges = parts
    g = build_graph(names, directed, weighted, edges)
    named = [(g.node_names[u], g.node_names[v], w) for u, v, w in g.edges]
    assert build_graph(list(g.node_names), directed, weighted, named) == g


def test_equal_graphs_from_different_statement_order():
    a = build_graph(["B", "A", "C"], False, True, [("C", "A", 2), ("B", "A", 1)])
    b = build_graph(["A", "C", "B"], False, True, [("A", "B", 1), ("A", "C", 2)])
    assert a == b


def test_weight_coercion():
    assert coerce_weight("7/2") == Fraction(7, 2)
    assert coerce_weight(Fraction(4, 2)) == 2
    assert isinstance(coerce_weight(Fraction(4, 2)), int)
    assert coerce_weight("12") == 12
    with pytest.raises(GraphError):
        coerce_weight(0.5)
    with pytest.raises(GraphError):
        coerce_weight(True)
    with pytest.raises(GraphError):
        coerce_weight("three")


def test_format_weight():
    assert format_weight(7) == "7"
    assert format_weight(Fraction(7, 2)) == "7/2"
    assert format_weight(Fraction(8, 2)) == "4"


def test_build_rejections():
    with pytest.raises(DuplicateNodeError):
        build_graph(["A", "A"], False, False, [])
    with pytest.raises(GraphError):
        build_graph(["A", ""], False, False, [])
    with pytest.raises(GraphError):
        build_graph(["A", " B"], False, False, [])
    with pytest.raises(UnknownEndpointError):
        build_graph(["A", "B"], False, False, [("A", "Z")])
    with pytest.raises(SelfLoopError):
        build_graph(["A", "B"], False, False, [("A", "A")])
    with pytest.raises(NegativeWeightError):
        build_graph(["A", "B"], False, True, [("A", "B", -1)])
    with pytest.raises(DuplicateEdgeError):
        build_graph(["A", "B"], False, True, [("A", "B", 1), ("B", "A", 1)])
    with pytest.raises(GraphError):
        build_graph(["A", "B"], False, False, [("A", "B", 3)])


def test_directed_antiparallel_edges_allowed():
    g = build_graph(["A", "B"], True, True, [("A", "B", 1), ("B", "A", 5)])
    assert g.edge_count == 2
    assert g.weight(0, 1) == 1
    assert g.weight(1, 0) == 5


def test_adjacency_and_weight_lookup():
    g = build_graph(["A", "B", "C"], False, True, [("A", "B", 3), ("B", "C", 4)])
    assert g.adjacency == ((1,), (0, 2), (1,))
    assert g.weight(2, 1) == 4
    assert g.has_edge(0, 1) and not g.has_edge(0, 2)
    with pytest.raises(GraphError):
        g.weight(0, 2)
    with pytest.raises(UnknownEndpointError):
        g.index_of("Z")


def test_merge_edge_triples():
    merged = merge_edge_triples([("A", "B", 3), ("B", "A", 3), ("A", "C", 2)], directed=False)
    assert merged == [("A", "B", 3), ("A", "C", 2)]
    with pytest.raises(ConflictingWeightsError):
        merge_edge_triples([("A", "B", 3), ("B", "A", 5)], directed=False)
    # Direction matters for directed graphs: no conflict here.
    assert len(merge_edge_triples([("A", "B", 3), ("B", "A", 5)], directed=True)) == 2


def test_stats_small_cases():
    k3 = build_graph(["A", "B", "C"], False, False, [("A", "B"), ("A", "C"), ("B", "C")])
    s = graph_stats(k3)
    assert s.node_count == 3 and s.edge_count == 3
    assert s.density == 1 and s.is_complete and s.is_connected

    path = build_graph(["A", "B", "C", "D"], False, False, [("A", "B"), ("B", "C"), ("C", "D")])
    s = graph_stats(path)
    assert s.density == Fraction(3, 6)
    assert s.is_connected and not s.is_complete

    split = build_graph(["A", "B", "C"], False, False, [("A", "B")])
    assert not graph_stats(split).is_connected

    single = build_graph(["A"], False, False, [])
    s = graph_stats(single)
    assert s.is_connected and not s.is_complete and s.density == 0


def test_stats_directed_density():
    g = build_graph(["A", "B", "C"], True, False, [("A", "B"), ("B", "A")])
    assert graph_stats(g).density == Fraction(2, 6)


@given(graph_parts(min_nodes=2))
def test_stats_match_definitions(parts):
    names, directed, weighted, edges = parts
    g = build_graph(names, directed, weighted, edges)
    s = graph_stats(g)
    n = g.node_count
    possible = n * (n - 1) if directed else n * (n - 1) // 2
    assert s.density == Fraction(g.edge_count, possible)
    assert s.is_complete == (g.edge_count == possible)
    reach = {0}
    frontier = [0]
    while frontier:
        u = frontier.pop()
        for a, b, _ in g.edges:
            for x, y in ((a, b), (b, a)):
                if x == u and y not in reach:
                    reach.add(y)
                    frontier.append(y)
    assert s.is_connected == (len(reach) == n)

import pytest

from graphcrew.graph import GraphError, build_graph
from graphcrew.solvers import (
    TooLargeError,
    vertex_cover_approx,
    vertex_cover_exact,
    verify_solution,
)

from oracles import brute_min_cover_size
from util import gnp_graph, names_for


def test_known_covers():
    path = build_graph(["A", "B", "C", "D"], False, False, [("A", "B"), ("B", "C"), ("C", "D")])
    sol = vertex_cover_exact(path)
    assert sol.objective == 2
    assert verify_solution("vertex_cover", path, sol).valid

    star = build_graph(
        ["Hub", "X", "Y", "Z"], False, False, [("Hub", "X"), ("Hub", "Y"), ("Hub", "Z")]
    )
    assert vertex_cover_exact(star).payload == ("Hub",)

    triangle = build_graph(["A", "B", "C"], False, False, [("A", "B"), ("A", "C"), ("B", "C")])
    assert vertex_cover_exact(triangle).objective == 2

    empty = build_graph(["A", "B"], False, False, [])
    assert vertex_cover_exact(empty).payload == ()
    assert vertex_cover_approx(empty).payload == ()


def test_exact_matches_enumeration():
    for seed in range(15):
        n = 4 + seed % 7
        g = gnp_graph(n, 0.35, seed=900 + seed)
        assert vertex_cover_exact(g).objective == brute_min_cover_size(g)


def test_approx_is_valid_and_within_factor_two():
    for seed in range(15):
        g = gnp_graph(10, 0.35, seed=1200 + seed)
        approx = vertex_cover_approx(g)
        exact = vertex_cover_exact(g)
        assert verify_solution("vertex_cover", g, approx).valid
        assert exact.objective <= approx.objective <= 2 * exact.objective
        assert not approx.exact and exact.exact


def test_factor_two_is_reached_on_a_square():
    names = names_for(4)
    square = build_graph(
        names,
        False,
        False,
        [(names[0], names[1]), (names[1], names[2]), (names[2], names[3]), (names[0], names[3])],
    )
    assert vertex_cover_exact(square).objective == 2
    assert vertex_cover_approx(square).objective == 4


def test_deterministic_across_runs():
    g = gnp_graph(14, 0.3, seed=31)
    assert vertex_cover_exact(g) == vertex_cover_exact(g)
    assert vertex_cover_approx(g) == vertex_cover_approx(g)


def test_cover_payload_is_sorted():
    g = gnp_graph(12, 0.4, seed=8)
    for sol in (vertex_cover_exact(g), vertex_cover_approx(g)):
        assert list(sol.payload) == sorted(sol.payload)


def test_input_rejections():
    with pytest.raises(TooLargeError):
        vertex_cover_exact(gnp_graph(31, 0.3, seed=1))
    assert vertex_cover_exact(gnp_graph(18, 0.3, seed=1), max_nodes=18).exact
    directed = build_graph(["A", "B"], True, False, [("A", "B")])
    with pytest.raises(GraphError):
        vertex_cover_exact(directed)
    with pytest.raises(GraphError):
        vertex_cover_approx(directed)

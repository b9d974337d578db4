import numpy as np
import pytest

from cmlhdc.graph import Graph, random_connected_graph


def rng_of(seed=0):
    return np.random.default_rng(seed)


def square_graph():
    # 0-1-2-3-0 cycle
    return Graph(n=4, edges=((0, 1), (1, 2), (2, 3), (0, 3)))


def test_directed_actions_double_edges():
    g = square_graph()
    assert g.num_actions == 8
    assert (0, 1) in g.actions and (1, 0) in g.actions


def test_neighbors_and_permissible_actions():
    g = square_graph()
    assert sorted(g.neighbors(0)) == [1, 3]
    perm = g.permissible_actions(1)
    assert {g.actions[a] for a in perm} == {(1, 0), (1, 2)}


def test_action_index_and_reverse():
    g = square_graph()
    a = g.action_index(2, 3)
    assert g.actions[a] == (2, 3)
    assert g.actions[g.action_reverse(a)] == (3, 2)


def test_shortest_path_lengths_match_hand_count():
    g = square_graph()
    assert g.shortest_path_length(0, 0) == 0
    assert g.shortest_path_length(0, 1) == 1
    assert g.shortest_path_length(0, 2) == 2
    assert g.shortest_path_length(1, 3) == 2


def test_disconnected_path_raises():
    g = Graph(n=4, edges=((0, 1), (2, 3)))
    with pytest.raises(ValueError):
        g.shortest_path_length(0, 3)


def test_node_range_checked():
    g = square_graph()
    with pytest.raises((IndexError, ValueError)):
        g.neighbors(4)


def test_random_connected_graph_shape_and_connectivity():
    for n, e in ((10, 20), (25, 50), (5, 4)):
        g = random_connected_graph(n, e, rng_of(n))
        assert g.n == n
        assert len(g.edges) == e
        assert g.is_connected()
        assert all(u != v for u, v in g.edges)
        assert len(set(map(tuple, map(sorted, g.edges)))) == e


def test_random_graph_deterministic_per_seed():
    g1 = random_connected_graph(12, 24, rng_of(3))
    g2 = random_connected_graph(12, 24, rng_of(3))
    assert g1.edges == g2.edges


def test_too_few_edges_rejected():
    with pytest.raises(ValueError):
        random_connected_graph(10, 8, rng_of(0))


def test_graph_json_roundtrip():
    g = random_connected_graph(8, 16, rng_of(1))
    out = Graph.from_json(g.to_json())
    assert out.n == g.n and out.edges == g.edges

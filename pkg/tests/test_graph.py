import numpy as np
import pytest
from conftest import from_adj
from oracles import bfs_distances, labelled_graphs, random_connected_adj

from tisim.exceptions import DisconnectedGraphError, GraphFormatError
from tisim.graph import (
    Graph,
    all_pairs_distances,
    complete_graph,
    degrees,
    encode_graph6,
    is_connected,
    parse_graph6,
    path_graph,
    read_graph6,
    read_graph6_lines,
    star_graph,
    write_graph6,
)


@pytest.mark.parametrize("text,expected", [
    ("Bw", complete_graph(3)),
    ("Bg", path_graph(3)),
    ("@", Graph(np.zeros((1, 1), dtype=bool))),
])
def test_parse_examples(text, expected):
    assert parse_graph6(text) == expected
    assert encode_graph6(expected) == text


def test_path_edges():
    assert sorted(parse_graph6("Bg").edges()) == [(0, 1), (1, 2)]


@pytest.mark.parametrize("bad", ["", "Bw!", "B", "~~", "Bww", "B\x7f", "B w"])
def test_parse_errors(bad):
    with pytest.raises(GraphFormatError) as info:
        parse_graph6(bad)
    assert "byte offset" in str(info.value)


def test_encode_too_large():
    with pytest.raises(ValueError):
        encode_graph6(path_graph(63))


def test_graph_rejects_loops_and_asymmetry():
    with pytest.raises(ValueError):
        Graph(np.eye(2, dtype=bool))
    with pytest.raises(ValueError):
        Graph(np.array([[0, 1], [0, 0]], dtype=bool))


def test_graph_is_immutable():
    g = path_graph(3)
    with pytest.raises(ValueError):
        g.adjacency[0, 2] = True


def test_round_trip_random(rng):
    for _ in range(1000):
        n = int(rng.integers(2, 21))
        g = from_adj(random_connected_adj(rng, n))
        back = parse_graph6(encode_graph6(g))
        assert np.array_equal(back.adjacency, g.adjacency)


def test_file_reader(tmp_path):
    path = tmp_path / "fam.g6"
    path.write_bytes(b">>graph6<<Bw\r\nBg\r\n\r\n")
    graphs = read_graph6(path)
    assert [g.label for g in graphs] == ["Bw", "Bg"]
    out = tmp_path / "out.g6"
    write_graph6(out, graphs)
    assert out.read_bytes() == b"Bw\nBg\n"


def test_file_error_names_line():
    with pytest.raises(GraphFormatError) as info:
        read_graph6_lines(["Bw", "Bg", "B?!"])
    assert "line 3" in str(info.value)


def test_is_connected_examples():
    assert is_connected(complete_graph(1))
    assert is_connected(path_graph(3))
    two_edges = Graph.from_edges(4, [(0, 1), (2, 3)])
    assert not is_connected(two_edges)
    with pytest.raises(DisconnectedGraphError):
        all_pairs_distances(two_edges)


def test_distance_examples():
    assert all_pairs_distances(path_graph(3)).tolist() == [[0, 1, 2], [1, 0, 1], [2, 1, 0]]
    d = all_pairs_distances(complete_graph(3))
    assert (d[~np.eye(3, dtype=bool)] == 1).all()
    assert all_pairs_distances(path_graph(4)).max() == 3


def test_degree_examples():
    assert tuple(degrees(complete_graph(3))) == (2, 2, 2)
    assert tuple(degrees(path_graph(3))) == (1, 2, 1)
    assert tuple(degrees(star_graph(5))) == (4, 1, 1, 1, 1)


def test_handshake(rng):
    for _ in range(200):
        g = from_adj(random_connected_adj(rng, int(rng.integers(1, 15))))
        assert int(degrees(g).sum()) == 2 * g.n_edges


def test_distances_match_bfs_on_all_n7(n7):
    for g in n7:
        assert np.array_equal(all_pairs_distances(g), bfs_distances(g.adjacency))


def test_distances_match_bfs_small_labelled():
    # every connected labelled graph on 5 vertices
    for adj in labelled_graphs(5):
        g = from_adj(adj)
        if is_connected(g):
            assert np.array_equal(all_pairs_distances(g), bfs_distances(adj))


def test_distance_metric_axioms(rng):
    for _ in range(100):
        n = int(rng.integers(2, 9))
        d = all_pairs_distances(from_adj(random_connected_adj(rng, n)))
        assert np.array_equal(d, d.T)
        assert (np.diag(d) == 0).all()
        # d[u, w] <= d[u, v] + d[v, w] for all triples
        assert (d[:, None, :] <= d[:, :, None] + d[None, :, :]).all()

import math

import numpy as np
import pytest
from conftest import from_adj, relabel_random
from oracles import NAIVE, random_connected_adj

from tisim.exceptions import DisconnectedGraphError
from tisim.graph import Graph, complete_graph, path_graph
from tisim.indices import (
    CORE_INDICES,
    EXTENDED_INDICES,
    IndexId,
    compute_index,
    compute_vector,
    degree_distance,
    first_zagreb,
    gutman,
    harary,
    randic,
    resolve_index_set,
    sombor,
    wiener,
)

K1, K2, K3 = complete_graph(1), complete_graph(2), complete_graph(3)
P3, P4 = path_graph(3), path_graph(4)


@pytest.mark.parametrize("fn,cases", [
    (harary, [(K1, 0.0), (P3, 2.5), (K3, 3.0)]),
    (sombor, [(K2, math.sqrt(2)), (P3, 2 * math.sqrt(5)), (K3, 6 * math.sqrt(2))]),
    (degree_distance, [(K2, 2.0), (P3, 10.0), (K3, 12.0)]),
    (gutman, [(K2, 1.0), (P3, 6.0), (K3, 12.0)]),
    (first_zagreb, [(K2, 2.0), (P3, 6.0), (K3, 12.0)]),
    (randic, [(K2, 1.0), (P3, math.sqrt(2)), (K3, 1.5)]),
    (wiener, [(K2, 1.0), (P3, 4.0), (P4, 10.0)]),
])
def test_index_examples(fn, cases):
    for g, expected in cases:
        assert fn(g) == pytest.approx(expected, abs=1e-12)


def test_vector_examples():
    p3 = compute_vector(P3, "core").values
    assert np.allclose(p3, [2.5, 4.472136, 10, 6, 2.828427, 5.356367], atol=5e-7)
    assert np.allclose(compute_vector(K1, "core").values, [0, 0, 0, 0, 0, 1], atol=1e-15)
    k2 = compute_vector(K2, "extended").values
    expected = [1, math.sqrt(2), 2, 1, 2, math.e + 1 / math.e, 2, 1, 4 / 3, 1]
    assert np.allclose(k2, expected, atol=1e-12)


def test_vector_metadata():
    v = compute_vector(P3, "extended")
    assert v.ids == EXTENDED_INDICES
    assert list(v.as_dict()) == [i.value for i in IndexId]


def test_resolve_index_set():
    assert resolve_index_set("core") == CORE_INDICES
    assert resolve_index_set(["Wiener", "Harary", "Energy"]) == (IndexId.WIENER, IndexId.HARARY, IndexId.ENERGY)
    with pytest.raises(ValueError):
        resolve_index_set(["Wiener", "Harary"])
    with pytest.raises(ValueError):
        resolve_index_set(["Wiener", "Wiener", "Energy"])
    with pytest.raises(ValueError):
        resolve_index_set("everything")


def test_disconnected_rejected():
    g = Graph.from_edges(4, [(0, 1), (2, 3)])
    for idx in IndexId:
        with pytest.raises(DisconnectedGraphError):
            compute_index(g, idx)


def test_isomorphism_invariance(rng):
    for _ in range(200):
        g = from_adj(random_connected_adj(rng, int(rng.integers(1, 13))))
        a = compute_vector(g, "extended").values
        b = compute_vector(relabel_random(g, rng), "extended").values
        assert np.allclose(a, b, rtol=1e-9, atol=1e-12)


def test_naive_oracle_random(rng):
    for _ in range(100):
        g = from_adj(random_connected_adj(rng, int(rng.integers(2, 13))))
        got = compute_vector(g, "extended").as_dict()
        for name, fn in NAIVE.items():
            ref = fn(g.adjacency)
            assert got[name] == pytest.approx(ref, rel=1e-9, abs=1e-12), name


def test_harary_wiener_relation(n7):
    from tisim.graph import all_pairs_distances
    for g in n7:
        h, w = harary(g), wiener(g)
        if all_pairs_distances(g).max() <= 1:
            assert h == w
        else:
            assert h < w


def test_core_prefix_bit_identical(rng):
    for _ in range(100):
        g = from_adj(random_connected_adj(rng, int(rng.integers(1, 15))))
        core = compute_vector(g, "core").values
        ext = compute_vector(g, "extended").values
        assert np.array_equal(ext[:6], core)

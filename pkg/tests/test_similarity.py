import math

import numpy as np
import pytest
from conftest import from_adj, relabel_random
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import random_connected_adj
from sklearn.base import clone

from tisim.exceptions import DegenerateScalingError
from tisim.graph import complete_graph, path_graph
from tisim.indices import compute_vector
from tisim.similarity import (
    IndexScaler,
    IndexVectorizer,
    PairTable,
    SimilarityConfig,
    TopologicalSimilarity,
    distance_from_similarity,
    distance_graphs,
    distance_p,
    family_stats,
    max_distance,
    pair_table,
    rescale_similarities,
    scale,
    similarity_from_distance,
    similarity_from_unbounded_distance,
    similarity_p,
)

P3, K3 = path_graph(3), complete_graph(3)
P3_RAW = [2.5, 2 * math.sqrt(5), 10, 6, 2 * math.sqrt(2), math.exp(math.sqrt(2)) + 1 + math.exp(-math.sqrt(2))]

unit_vectors = st.lists(st.floats(0, 1, allow_nan=False), min_size=6, max_size=6)


def test_scale_examples():
    assert np.allclose(scale(P3_RAW), [0, 0.262951, 1, 0.466667, 0.043790, 0.380849], atol=1e-6)
    k3 = compute_vector(K3).values
    assert np.allclose(scale(k3), [0, 0.609476, 1, 1, 0.111111, 0.569424], atol=1e-6)


def test_scale_degenerate():
    with pytest.raises(DegenerateScalingError):
        scale([3.0] * 6)
    assert np.array_equal(scale([3.0] * 6, strict=False), np.zeros(6))


def test_scale_per_family():
    raw = np.array([[1.0, 5.0, 2.0], [3.0, 5.0, 4.0]])
    out = scale(raw, "per-family", family_stats(raw))
    assert out.tolist() == [[0.0, 0.0, 0.0], [1.0, 0.0, 1.0]]
    # out-of-range values are clipped
    assert scale([4.0, 5.0, 0.0], "per-family", family_stats(raw)).tolist() == [1.0, 0.0, 0.0]
    with pytest.raises(ValueError):
        scale(raw, "per-family")


def test_distance_examples():
    x = scale(P3_RAW)
    assert distance_p(x, x) == 0.0
    # independent recomputation from the scaled vectors
    y = scale(compute_vector(K3).values)
    assert distance_p(x, y, 2) == pytest.approx(math.sqrt(sum((a - b) ** 2 for a, b in zip(x, y))), abs=1e-15)
    assert distance_p(x, y, 2) == pytest.approx(0.666795, abs=1e-6)
    assert distance_p(np.zeros(6), np.ones(6), 2) == pytest.approx(math.sqrt(6), abs=1e-15)
    assert max_distance(6, 2) == pytest.approx(math.sqrt(6), abs=1e-15)
    assert max_distance(6, 1) == 6.0


def test_similarity_examples():
    assert similarity_p(P3, P3) == 1.0
    assert similarity_p(P3, K3) == pytest.approx(0.727782, abs=1e-6)
    assert similarity_p(path_graph(5), path_graph(5).relabel([4, 2, 0, 1, 3])) == 1.0


def test_conversions():
    assert similarity_from_distance(0, 2.0) == 1
    assert similarity_from_distance(2.0, 2.0) == 0
    assert similarity_from_distance(1.0, 2.0) == 0.5
    assert [similarity_from_unbounded_distance(d) for d in (0, 1, 3)] == [1, 0.5, 0.25]
    assert [distance_from_similarity(s) for s in (1, 0, 0.25)] == [0, 1, 0.75]
    with pytest.raises(ValueError):
        similarity_from_distance(3.0, 2.0)
    with pytest.raises(ValueError):
        distance_from_similarity(1.5)


@given(st.floats(0, 1))
def test_similarity_round_trip(s):
    assert 1 - (1 - s) == pytest.approx(s, abs=1e-15)
    assert 1 - distance_from_similarity(s) == 1 - (1 - s)


@given(st.floats(0.1, 100), st.floats(0, 1))
def test_distance_round_trip(m, frac):
    d = frac * m
    assert abs(m * (1 - similarity_from_distance(d, m)) - d) <= 1e-12 * max(1.0, m)


@settings(max_examples=300)
@given(unit_vectors, unit_vectors, st.sampled_from([1.0, 1.5, 2.0, 3.0, 7.5]))
def test_distance_axioms(a, b, p):
    d = distance_p(a, b, p)
    assert d >= 0
    assert d == distance_p(b, a, p)
    assert distance_p(a, a, p) == 0
    assert d <= max_distance(6, p) * (1 + 1e-12)


@settings(max_examples=300)
@given(unit_vectors, unit_vectors)
def test_monotone_in_p(a, b):
    ds = [distance_p(a, b, p) for p in (1.0, 1.5, 2.0, 3.0, 5.0, 10.0)]
    assert all(x >= y - 1e-12 for x, y in zip(ds, ds[1:]))


def test_per_graph_scale_invariance(rng):
    for _ in range(50):
        raw = rng.random((2, 6)) * 100
        c = float(rng.uniform(0.01, 1000))
        x, y = scale(raw)
        x2, y2 = scale(np.vstack([raw[0] * c, raw[1]]))
        assert abs(distance_p(x, y) - distance_p(x2, y2)) <= 1e-12


def test_pair_table_counts(t7):
    assert len(pair_table(t7)) == 55
    assert len(pair_table([P3, K3])) == 1


def test_pair_table_sorted_and_csv(t7, tmp_path):
    table = pair_table(t7, SimilarityConfig(p=1.0), family_id="T7")
    assert (np.diff(table.similarity) >= 0).all()
    text = table.to_csv()
    assert text.splitlines()[0] == "label_a,label_b,d_p,s_p"
    assert len(text.splitlines()) == 56
    table.to_csv(tmp_path / "t.csv")
    assert (tmp_path / "t.csv").read_text() == text
    lookup = table.lookup()
    assert lookup["T7_00", "T7_01"] == lookup["T7_01", "T7_00"]


def test_rescale():
    table = PairTable(None, None, np.array(["a", "a", "b"]), np.array(["b", "c", "c"]),
                      np.zeros(3), np.array([0.2, 0.6, 1.0]))
    assert np.allclose(rescale_similarities(table).s_prime, [0, 0.5, 1], atol=1e-15)
    flat = PairTable(None, None, np.array(["a"]), np.array(["b"]), np.zeros(1), np.array([0.5]))
    with pytest.raises(DegenerateScalingError):
        rescale_similarities(flat)


def test_estimator_params_and_clone():
    est = TopologicalSimilarity(indices="extended", p=3.0, scaling="per-family")
    assert est.get_params()["p"] == 3.0
    twin = clone(est)
    assert twin.get_params() == est.get_params()
    assert TopologicalSimilarity().set_params(p=1.0).p == 1.0


def test_estimator_fit_transform(t7):
    est = TopologicalSimilarity().fit(t7)
    s = est.pairwise()
    assert s.shape == (11, 11)
    assert np.array_equal(s, s.T)
    assert np.all(np.diag(s) == 1.0)
    assert np.allclose(est.transform(t7[:2]), s[:2])
    assert est.labels_[0] == "T7_00"


def test_vectorizer_and_scaler(t7):
    vec = IndexVectorizer("extended")
    raw = vec.fit_transform(t7)
    assert raw.shape == (11, 10)
    assert list(vec.get_feature_names_out())[-1] == "Wiener"
    scaled = IndexScaler("per-family").fit_transform(raw)
    assert scaled.min() == 0.0 and scaled.max() == 1.0
    assert np.array_equal(IndexScaler().fit_transform(raw)[0], scale(raw[0]))


def test_per_family_self_similarity(t7):
    est = TopologicalSimilarity(scaling="per-family").fit(t7)
    assert np.all(np.diag(est.pairwise()) == 1.0)


def test_parallel_matches_serial(t7):
    a = pair_table(t7, n_jobs=1).to_csv()
    b = pair_table(t7, n_jobs=2).to_csv()
    assert a == b


def test_rejects_bad_input():
    with pytest.raises(TypeError):
        TopologicalSimilarity().fit(P3)
    with pytest.raises(ValueError):
        SimilarityConfig(p=0.5)
    with pytest.raises(ValueError):
        SimilarityConfig(scaling="global")
    with pytest.raises(ValueError):
        pair_table([P3.with_label("x"), K3.with_label("x")])


def test_isomorphic_pairs_similarity_one(rng):
    for _ in range(50):
        g = from_adj(random_connected_adj(rng, int(rng.integers(2, 12))))
        h = relabel_random(g, rng)
        for cfg in (SimilarityConfig(), SimilarityConfig("extended", 1.0, "per-family")):
            assert abs(distance_graphs(g, h, cfg)) <= 1e-9

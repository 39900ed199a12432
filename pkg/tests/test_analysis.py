import json

import numpy as np
import pytest
from oracles import linear_scan_extrema
from scipy.stats import pearsonr

from tisim.analysis import extrema_pairs, pearson, run_experiment_decane, run_experiment_t7
from tisim.similarity import PairTable


def test_pearson_vs_scipy(rng):
    for _ in range(50):
        x = rng.random(30)
        y = x * rng.random() + rng.random(30)
        assert pearson(x, y).r == pytest.approx(pearsonr(x, y)[0], abs=1e-12)


def test_pearson_symmetric_and_affine_invariant(rng):
    for _ in range(50):
        x, y = rng.random(20), rng.random(20)
        r = pearson(x, y).r
        assert pearson(y, x).r == pytest.approx(r, abs=1e-12)
        a, b = rng.uniform(0.1, 50), rng.uniform(-10, 10)
        assert pearson(a * x + b, y).r == pytest.approx(r, abs=1e-12)
        assert pearson(x, a * y + b).r == pytest.approx(r, abs=1e-12)


def test_pearson_errors():
    with pytest.raises(ValueError):
        pearson([1, 2], [1, 2])
    with pytest.raises(ValueError):
        pearson([1, 1, 1], [1, 2, 3])
    with pytest.raises(ValueError):
        pearson([1, 2, 3], [1, 2])


def test_extrema_vs_linear_scan(rng):
    for _ in range(50):
        m = int(rng.integers(2, 40))
        # coarse values so ties actually happen
        sims = np.round(rng.random(m), 1)
        la = np.array([f"a{i}" for i in range(m)])
        lb = np.array([f"b{i}" for i in range(m)])
        table = PairTable(None, None, la, lb, 1 - sims, sims)
        rep = extrema_pairs(table)
        lo, hi = linear_scan_extrema(list(sims))
        assert rep.min_pairs == tuple((la[i], lb[i]) for i in lo)
        assert rep.max_pairs == tuple((la[i], lb[i]) for i in hi)
        assert rep.min_unique == (len(lo) == 1)


def test_t7_runner(tmp_path):
    res = run_experiment_t7(tmp_path)
    assert len(res.tables["core"]) == 55
    meta = json.loads((tmp_path / "t7_meta.json").read_text())
    assert set(meta["pearson_by_scaling"]) == {"per-graph", "per-family"}
    assert meta["extrema_core"]["min_unique"] is True
    rows = res.tables["ged_rows"]
    assert all(r[3] == 1.0 / (r[2] + 1) for r in rows)
    assert sorted(p.name for p in tmp_path.iterdir()) == [
        "t7_ged.csv", "t7_meta.json", "t7_s2_core.csv", "t7_s2_extended.csv"]


def test_decane_runner(tmp_path):
    res = run_experiment_decane(tmp_path)
    assert len(res.rows) == 2775
    meta = json.loads((tmp_path / "decane_meta.json").read_text())
    assert meta["degeneracy"]["s2"]["distinct"] >= 1
    assert -1.0 <= meta["pearson_s2_vs_tanimoto"] <= 1.0

"""Correlation and extrema statistics, and the experiment runners.

Each runner returns an :class:`ExperimentResult` and, given ``out_dir``,
writes its CSV files plus a ``<name>_meta.json`` sidecar. Output bytes
depend only on the arguments, never on ``n_jobs``.
"""

import csv
import io
import itertools
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .enumeration import canonical_certificate, enumerate_alkanes, enumerate_connected_graphs, enumerate_trees
from .fingerprints import HASH_ID, degeneracy_profile, morgan_fingerprint, tanimoto
from .ged import ged
from .graph import encode_graph6
from .random_models import GENERATOR_ID, ModelSpec, generate_batch
from .similarity import SimilarityConfig, TopologicalSimilarity, rescale_similarities

DEFAULT_SEED = 20250101
EXTREMA_TOL = 1e-12

REFERENCE_RANDOM_SPECS = (
    ModelSpec("ER", 100, p=0.1),
    ModelSpec("BA", 100, m=3),
    ModelSpec("WS", 100, k=6, p=0.7),
)


@dataclass(frozen=True)
class CorrelationReport:
    r: float
    n_points: int
    config_a: object = None
    config_b: object = None


@dataclass(frozen=True)
class ExtremaReport:
    min_value: float
    min_pairs: tuple
    max_value: float
    max_pairs: tuple

    @property
    def min_unique(self):
        return len(self.min_pairs) == 1

    @property
    def max_unique(self):
        return len(self.max_pairs) == 1

    def as_dict(self):
        return {
            "min_value": self.min_value, "min_pairs": [list(p) for p in self.min_pairs],
            "min_unique": self.min_unique,
            "max_value": self.max_value, "max_pairs": [list(p) for p in self.max_pairs],
            "max_unique": self.max_unique,
        }


@dataclass
class ExperimentResult:
    name: str
    metadata: dict
    tables: dict = field(default_factory=dict)
    files: dict = field(default_factory=dict)


def pearson(xs, ys, config_a=None, config_b=None):
    """Sample Pearson correlation coefficient."""
    x = np.asarray(xs, dtype=np.float64)
    y = np.asarray(ys, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError(f"series must be 1-D and equal length, got {x.shape} and {y.shape}")
    if x.size < 3:
        raise ValueError("pearson needs at least 3 points")
    dx = x - x.mean()
    dy = y - y.mean()
    sxx = float(np.dot(dx, dx))
    syy = float(np.dot(dy, dy))
    if sxx == 0.0 or syy == 0.0:
        raise ValueError("correlation is undefined for a constant series")
    r = float(np.dot(dx, dy)) / math.sqrt(sxx * syy)
    return CorrelationReport(min(1.0, max(-1.0, r)), int(x.size), config_a, config_b)


def extrema_pairs(table, tol=EXTREMA_TOL):
    """Global min/max similarity of a pair table and every pair attaining them."""
    s = table.similarity
    if len(s) == 0:
        raise ValueError("empty pair table")
    lo, hi = float(s.min()), float(s.max())
    pairs = list(zip(table.label_a.tolist(), table.label_b.tolist()))
    min_pairs = tuple(p for p, v in zip(pairs, s) if abs(v - lo) <= tol)
    max_pairs = tuple(p for p, v in zip(pairs, s) if abs(v - hi) <= tol)
    return ExtremaReport(lo, min_pairs, hi, max_pairs)


def _aligned(table_a, table_b):
    """Similarity columns of two tables over the same pairs, in table_a order."""
    other = table_b.lookup()
    keys = list(zip(table_a.label_a.tolist(), table_a.label_b.tolist()))
    if len(keys) != len(table_b) or any(k not in other for k in keys):
        raise ValueError("tables do not cover the same pairs")
    return table_a.similarity, np.array([other[k] for k in keys])


# output helpers -------------------------------------------------------------


def _dump_json(obj):
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _write(out_dir, name, text, result):
    if out_dir is None:
        return
    path = Path(out_dir) / name
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    result.files[name] = path


def csv_text(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([repr(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def _base_meta(name, cfg, **extra):
    meta = {"experiment": name, "tool": "tisim", "version": __version__}
    if cfg is not None:
        meta["config"] = cfg.as_dict()
    meta.update(extra)
    return meta


def _certificates(graphs, labels):
    by_label = {g.label: g for g in graphs}
    return {lab: {"certificate": canonical_certificate(by_label[lab]).hex(),
                  "graph6": encode_graph6(by_label[lab])} for lab in sorted(labels)}


def _extrema_with_certs(report, graphs):
    out = report.as_dict()
    labels = {lab for pair in report.min_pairs + report.max_pairs for lab in pair}
    out["graphs"] = _certificates(graphs, labels)
    return out


def _fit_table(graphs, cfg, family, n_jobs):
    est = TopologicalSimilarity(cfg.indices, cfg.p, cfg.scaling, cfg.strict, n_jobs=n_jobs)
    return est.fit(graphs).pair_table(family)


# experiments ----------------------------------------------------------------


def run_experiment_t7(out_dir=None, scaling="per-graph", p=2.0, n_jobs=None, with_ged=True):
    """Core (k=6) vs extended (k=10) ``s_2`` on the 11 trees with 7 vertices.

    Also records the correlation under the other scaling mode and, with
    ``with_ged``, the ``s_1``/``s_2``/``s_GED`` comparison table.
    """
    trees = enumerate_trees(7)
    cfg_core = SimilarityConfig("core", p, scaling)
    cfg_ext = SimilarityConfig("extended", p, scaling)
    core = _fit_table(trees, cfg_core, "T7", n_jobs)
    ext = _fit_table(trees, cfg_ext, "T7", n_jobs)
    report = pearson(*_aligned(core, ext), cfg_core, cfg_ext)
    by_mode = {}
    for mode in ("per-graph", "per-family"):
        if mode == cfg_core.scaling:
            by_mode[mode] = report.r
        else:
            a = _fit_table(trees, SimilarityConfig("core", p, mode), "T7", n_jobs)
            b = _fit_table(trees, SimilarityConfig("extended", p, mode), "T7", n_jobs)
            by_mode[mode] = pearson(*_aligned(a, b)).r
    extrema = extrema_pairs(core)
    meta = _base_meta("t7", cfg_core, n_graphs=len(trees), n_pairs=len(core),
                      pearson_core_vs_extended=report.r, pearson_by_scaling=by_mode,
                      extrema_core=_extrema_with_certs(extrema, trees),
                      published_claims={"min_pair_unique": True, "pearson_core_vs_extended": 0.9992})
    result = ExperimentResult("t7", meta, {"core": core, "extended": ext})
    result.correlation = report
    result.extrema = extrema
    if with_ged:
        s1 = _fit_table(trees, SimilarityConfig("core", 1.0, scaling), "T7", n_jobs).lookup()
        by_label = {g.label: g for g in trees}
        rows = []
        for a, b in itertools.combinations(sorted(by_label), 2):
            d = ged(by_label[a], by_label[b]).ged
            rows.append((a, b, d, 1.0 / (d + 1), s1[a, b], core.lookup()[a, b]))
        meta["pearson_vs_s_ged"] = {
            "s1": pearson([r[3] for r in rows], [r[4] for r in rows]).r,
            "s2": pearson([r[3] for r in rows], [r[5] for r in rows]).r,
            "s1_vs_s2": pearson([r[4] for r in rows], [r[5] for r in rows]).r,
        }
        meta["distinct_values"] = {
            "s_ged": degeneracy_profile([r[3] for r in rows])[0],
            "s1": degeneracy_profile([r[4] for r in rows])[0],
            "s2": degeneracy_profile([r[5] for r in rows])[0],
        }
        result.tables["ged_rows"] = rows
        _write(out_dir, "t7_ged.csv", csv_text(["label_a", "label_b", "ged", "s_ged", "s1", "s2"], rows), result)
    _write(out_dir, "t7_s2_core.csv", core.to_csv(distance_name="d_2", similarity_name="s_2"), result)
    _write(out_dir, "t7_s2_extended.csv", ext.to_csv(distance_name="d_2", similarity_name="s_2"), result)
    _write(out_dir, "t7_meta.json", _dump_json(meta), result)
    return result


def run_experiment_n7(out_dir=None, scaling="per-graph", n_jobs=None):
    """``s_1`` and ``s_2`` over all 363378 pairs of connected 7-vertex graphs."""
    graphs = enumerate_connected_graphs(7)
    tables = {}
    meta = _base_meta("n7", None, n_graphs=len(graphs), scaling=scaling)
    result = ExperimentResult("n7", meta, tables)
    for name, p in (("s1", 1.0), ("s2", 2.0)):
        cfg = SimilarityConfig("core", p, scaling)
        est = TopologicalSimilarity(cfg.indices, cfg.p, cfg.scaling, n_jobs=n_jobs).fit(graphs)
        if name == "s2":
            result.estimator = est
        table = est.pair_table("N7")
        tables[name] = table
        ext = extrema_pairs(table)
        meta[f"{name}_config"] = cfg.as_dict()
        meta[f"{name}_n_pairs"] = len(table)
        meta[f"{name}_extrema"] = _extrema_with_certs(ext, graphs)
        if name == "s2":
            result.extrema = ext
        _write(out_dir, f"n7_{name}.csv",
               table.to_csv(distance_name=f"d_{int(p)}", similarity_name=f"s_{int(p)}"), result)
    _write(out_dir, "n7_meta.json", _dump_json(meta), result)
    return result


def _model_of(label):
    return label.split("_")[0]


def random_trend(table):
    """Within/cross model means of ``s_2`` and minima of ``s_2'``."""
    sums, counts, mins = {}, {}, {}
    s_prime = table.s_prime
    for a, b, s, sp in zip(table.label_a.tolist(), table.label_b.tolist(), table.similarity, s_prime):
        key = "-".join(sorted((_model_of(a), _model_of(b))))
        sums[key] = sums.get(key, 0.0) + float(s)
        counts[key] = counts.get(key, 0) + 1
        mins[key] = min(mins.get(key, math.inf), float(sp))
    return {"mean_s2": {k: sums[k] / counts[k] for k in sorted(sums)},
            "min_s2_prime": {k: mins[k] for k in sorted(mins)}}


def run_experiment_random(base_seed=DEFAULT_SEED, out_dir=None, scaling="per-graph", p=2.0, n_jobs=None):
    """Three ER, BA and WS networks (n = 100) and their rescaled ``s_2'``."""
    graphs = []
    for spec in REFERENCE_RANDOM_SPECS:
        graphs += generate_batch(spec, 3, base_seed)
    cfg = SimilarityConfig("core", p, scaling)
    table = rescale_similarities(_fit_table(graphs, cfg, "random", n_jobs))
    trend = random_trend(table)
    labels = [g.label for g in graphs]
    lookup = {}
    for a, b, sp in zip(table.label_a.tolist(), table.label_b.tolist(), table.s_prime):
        lookup[a, b] = lookup[b, a] = float(sp)
    matrix_rows = [[labels[i]] + [lookup[labels[i], labels[j]] if j < i else "" for j in range(len(labels) - 1)]
                   for i in range(1, len(labels))]
    meta = _base_meta("random", cfg, base_seed=base_seed, generator=GENERATOR_ID,
                      specs=[s.with_seed(base_seed).as_dict() for s in REFERENCE_RANDOM_SPECS],
                      n_edges={g.label: g.n_edges for g in graphs}, trend=trend)
    result = ExperimentResult("random", meta, {"s2": table})
    result.graphs = graphs
    result.matrix = matrix_rows
    _write(out_dir, "random_pairs.csv", table.to_csv(distance_name="d_2", similarity_name="s_2"), result)
    _write(out_dir, "random_matrix.csv", csv_text([""] + labels[:-1], matrix_rows), result)
    _write(out_dir, "random_meta.json", _dump_json(meta), result)
    return result


def decane_rows(carbons=10, radius=2, n_bits=2048, scaling="per-graph", n_jobs=None):
    skeletons = enumerate_alkanes(carbons)
    cfg = SimilarityConfig("core", 2.0, scaling)
    table = _fit_table(skeletons, cfg, f"C{carbons}", n_jobs)
    fps = {g.label: morgan_fingerprint(g, radius, n_bits) for g in skeletons}
    rows = [(a, b, float(s), tanimoto(fps[a], fps[b]))
            for a, b, s in zip(table.label_a.tolist(), table.label_b.tolist(), table.similarity)]
    return skeletons, cfg, table, rows


def run_experiment_decane(out_dir=None, scaling="per-graph", n_jobs=None, carbons=10):
    """``s_2`` against Morgan-style Tanimoto on the alkane skeletons."""
    skeletons, cfg, table, rows = decane_rows(carbons, scaling=scaling, n_jobs=n_jobs)
    s2 = [r[2] for r in rows]
    tan = [r[3] for r in rows]
    corr = pearson(s2, tan, cfg, "tanimoto_morgan")
    prof_s2 = degeneracy_profile(s2)
    prof_tan = degeneracy_profile(tan)
    meta = _base_meta(
        "decane", cfg, carbons=carbons, n_skeletons=len(skeletons), n_pairs=len(rows),
        fingerprint={"radius": 2, "n_bits": 2048, "hash": HASH_ID},
        pearson_s2_vs_tanimoto=corr.r,
        degeneracy={"s2": {"distinct": prof_s2[0], "max_multiplicity": prof_s2[1]},
                    "tanimoto_morgan": {"distinct": prof_tan[0], "max_multiplicity": prof_tan[1]}},
        s2_more_distinct=prof_s2[0] >= prof_tan[0],
        mean={"s2": float(np.mean(s2)), "tanimoto_morgan": float(np.mean(tan))})
    result = ExperimentResult("decane", meta, {"s2": table})
    result.rows = rows
    result.correlation = corr
    _write(out_dir, "decane_pairs.csv", csv_text(["label_a", "label_b", "s2", "tanimoto_morgan"], rows), result)
    _write(out_dir, "decane_meta.json", _dump_json(meta), result)
    return result

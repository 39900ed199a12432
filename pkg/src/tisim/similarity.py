"""Index-vector similarity: scaling, p-distance, similarity and pair tables.

The functional API (:func:`scale`, :func:`distance_p`, :func:`similarity_p`,
:func:`pair_table`) is built on three scikit-learn compatible estimators:

* :class:`IndexVectorizer` turns graphs into raw index matrices,
* :class:`IndexScaler` min-max scales each row (``per-graph``) or each
  column across the fitted family (``per-family``),
* :class:`TopologicalSimilarity` chains the two and exposes similarity
  matrices and sorted pair tables.
"""

import csv
import io
import logging
from dataclasses import dataclass, field

import numpy as np
from joblib import Parallel, delayed
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .exceptions import DegenerateScalingError
from .indices import ALL_INDICES, IndexVector, compute_vector, resolve_index_set
from .validation import check_graph, check_graphs, check_p, check_scaling, family_labels

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SimilarityConfig:
    """Every free parameter of ``s_p``."""

    indices: str = "core"
    p: float = 2.0
    scaling: str = "per-graph"
    strict: bool = True

    def __post_init__(self):
        ids = resolve_index_set(self.indices)
        object.__setattr__(self, "p", check_p(self.p))
        object.__setattr__(self, "scaling", check_scaling(self.scaling))
        if not isinstance(self.indices, str):
            object.__setattr__(self, "indices", tuple(i.value for i in ids))

    @property
    def k(self):
        return len(resolve_index_set(self.indices))

    def as_dict(self):
        return {"indices": self.indices if isinstance(self.indices, str) else list(self.indices),
                "p": self.p, "scaling": self.scaling, "strict": self.strict}


# scaling --------------------------------------------------------------------


def _as_matrix(raw):
    if isinstance(raw, IndexVector):
        return raw.as_array()[None, :], True
    arr = np.asarray(raw, dtype=np.float64)
    if arr.ndim == 1:
        return arr[None, :], True
    return arr, False


FLAT_RTOL = 1e-10


def scale(raw, mode="per-graph", family_stats=None, strict=True):
    """Min-max scale raw index values into ``[0, 1]``.

    ``per-graph`` uses the minimum and maximum of each graph's own values.
    ``per-family`` uses per-index ``(mins, maxs)`` from ``family_stats``.
    Accepts one vector (returns 1-D) or a matrix with one graph per row.
    A constant per-graph vector raises :class:`DegenerateScalingError` when
    ``strict``; otherwise it becomes the zero vector and a warning is logged.
    Under ``per-family`` an index that is constant over the family scales to
    0, and values outside the family range are clipped to ``[0, 1]``.
    """
    mode = check_scaling(mode)
    x, single = _as_matrix(raw)
    if not np.all(np.isfinite(x)):
        raise ValueError("raw index values must be finite")
    if mode == "per-graph":
        lo = x.min(axis=1, keepdims=True)
        hi = x.max(axis=1, keepdims=True)
    else:
        if family_stats is None:
            raise ValueError("per-family scaling needs family_stats=(mins, maxs)")
        lo, hi = (np.asarray(s, dtype=np.float64)[None, :] for s in family_stats)
        if lo.shape[1] != x.shape[1] or hi.shape[1] != x.shape[1]:
            raise ValueError("family_stats length does not match the index vector")
    span = hi - lo
    # spans at rounding-noise level (e.g. eigenvalue sums of isomorphic graphs)
    # count as constant rather than being stretched to [0, 1]
    flat = span <= FLAT_RTOL * np.maximum(np.maximum(np.abs(lo), np.abs(hi)), 1.0)
    # a column that is constant across the family carries no information and
    # maps to 0; only a constant per-graph vector is an error
    if flat.any() and mode == "per-graph":
        if strict:
            raise DegenerateScalingError("cannot min-max scale: raw index vector is constant")
        logger.warning("degenerate scaling (constant raw index vector); mapping to zero")
    with np.errstate(invalid="ignore", divide="ignore"):
        out = (x - lo) / np.where(flat, 1.0, span)
    out = np.where(np.broadcast_to(flat, out.shape), 0.0, out)
    if mode == "per-family":
        # graphs outside the fitted family range
        np.clip(out, 0.0, 1.0, out=out)
    return out[0] if single else out


def family_stats(raw_matrix):
    """Per-index ``(mins, maxs)`` over a family's raw index matrix."""
    x = np.asarray(raw_matrix, dtype=np.float64)
    return x.min(axis=0), x.max(axis=0)


# distances ------------------------------------------------------------------


def _pnorm_accumulate(a, b, p):
    """Row-wise ``(sum |a_i - b_i|^p)^(1/p)`` with a fixed summation order."""
    acc = np.zeros(np.broadcast_shapes(a.shape[:-1], b.shape[:-1]))
    for i in range(a.shape[-1]):
        diff = np.abs(a[..., i] - b[..., i])
        if p == 1.0:
            acc = acc + diff
        elif p == 2.0:
            acc = acc + diff * diff
        else:
            acc = acc + np.power(diff, p)
    if p == 1.0:
        return acc
    if p == 2.0:
        return np.sqrt(acc)
    return np.power(acc, 1.0 / p)


def max_distance(k, p):
    """Upper bound ``k ** (1/p)`` of ``d_p`` on ``[0, 1]^k``."""
    return float(_pnorm_accumulate(np.ones((1, k)), np.zeros((1, k)), check_p(p))[0])


def distance_p(a, b, p=2.0):
    """Minkowski p-distance between two equal-length vectors."""
    p = check_p(p)
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.ndim != 1 or a.shape != b.shape:
        raise ValueError(f"vectors must be 1-D and equal length, got {a.shape} and {b.shape}")
    return float(_pnorm_accumulate(a[None, :], b[None, :], p)[0])


def similarity_from_distance(d, bound):
    """``(M - d) / M`` for a distance bounded by ``M``."""
    if not bound > 0:
        raise ValueError(f"bound must be positive, got {bound}")
    if d < 0 or d > bound:
        raise ValueError(f"distance {d} outside [0, {bound}]")
    return (bound - d) / bound


def similarity_from_unbounded_distance(d):
    if d < 0:
        raise ValueError(f"distance must be non-negative, got {d}")
    return 1.0 / (1.0 + d)


def distance_from_similarity(s):
    if not 0.0 <= s <= 1.0:
        raise ValueError(f"similarity {s} outside [0, 1]")
    return 1.0 - s


# estimators -----------------------------------------------------------------


def _vector_values(g, indices):
    return compute_vector(g, indices).values


class IndexVectorizer(TransformerMixin, BaseEstimator):
    """Map each graph to its vector of topological indices.

    Parameters
    ----------
    indices : {"core", "extended"} or sequence of index names
        ``core`` is the first six indices, ``extended`` all ten.
    n_jobs : int, optional
        Worker processes for the per-graph evaluation (joblib semantics).
    """

    def __init__(self, indices="core", n_jobs=None):
        self.indices = indices
        self.n_jobs = n_jobs

    def fit(self, X, y=None):
        check_graphs(X)
        ids = resolve_index_set(self.indices)
        self.index_ids_ = tuple(i for i in ALL_INDICES if i in ids)
        self.n_features_out_ = len(self.index_ids_)
        return self

    def transform(self, X):
        check_is_fitted(self, "index_ids_")
        graphs = check_graphs(X)
        ids = self.index_ids_
        if self.n_jobs in (None, 1) or len(graphs) < 2:
            rows = [_vector_values(g, ids) for g in graphs]
        else:
            rows = Parallel(n_jobs=self.n_jobs)(delayed(_vector_values)(g, ids) for g in graphs)
        return np.array(rows, dtype=np.float64).reshape(len(graphs), len(ids))

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "index_ids_")
        return np.array([i.value for i in self.index_ids_], dtype=object)


class IndexScaler(TransformerMixin, BaseEstimator):
    """Min-max scaling of raw index matrices.

    With ``scaling="per-graph"`` every row is scaled by its own extremes and
    ``fit`` only records the width. With ``"per-family"`` the per-column
    extremes seen in ``fit`` are stored as ``data_min_`` / ``data_max_``.
    """

    def __init__(self, scaling="per-graph", strict=True):
        self.scaling = scaling
        self.strict = strict

    def fit(self, X, y=None):
        X = check_array(X, dtype=np.float64)
        mode = check_scaling(self.scaling)
        self.n_features_in_ = X.shape[1]
        if mode == "per-family":
            self.data_min_, self.data_max_ = family_stats(X)
        else:
            self.data_min_ = self.data_max_ = None
        return self

    def transform(self, X):
        check_is_fitted(self, "n_features_in_")
        X = check_array(X, dtype=np.float64)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"expected {self.n_features_in_} features, got {X.shape[1]}")
        stats = None if self.data_min_ is None else (self.data_min_, self.data_max_)
        return scale(X, check_scaling(self.scaling), stats, strict=self.strict)


class TopologicalSimilarity(BaseEstimator):
    """Graph similarity ``s_p`` from scaled topological-index vectors.

    ``fit`` takes a family of connected graphs. ``transform`` returns the
    similarity of new graphs to every fitted graph; :meth:`pairwise` and
    :meth:`pair_table` describe the fitted family itself.

    Examples
    --------
    >>> from tisim.graph import path_graph, complete_graph
    >>> est = TopologicalSimilarity(p=2).fit([path_graph(3), complete_graph(3)])
    >>> round(float(est.pairwise()[0, 1]), 6)
    0.727782
    """

    def __init__(self, indices="core", p=2.0, scaling="per-graph", strict=True, n_jobs=None):
        self.indices = indices
        self.p = p
        self.scaling = scaling
        self.strict = strict
        self.n_jobs = n_jobs

    @property
    def config(self):
        return SimilarityConfig(self.indices, self.p, self.scaling, self.strict)

    def fit(self, X, y=None):
        graphs = check_graphs(X)
        self.config_ = self.config
        self.labels_ = family_labels(graphs)
        self.vectorizer_ = IndexVectorizer(self.indices, n_jobs=self.n_jobs).fit(graphs)
        self.raw_ = self.vectorizer_.transform(graphs)
        self.scaler_ = IndexScaler(self.scaling, self.strict).fit(self.raw_)
        self.scaled_ = self.scaler_.transform(self.raw_)
        self.max_distance_ = max_distance(self.raw_.shape[1], self.config_.p)
        return self

    def _to_similarity(self, d):
        bound = self.max_distance_
        return (bound - d) / bound

    def transform(self, X):
        """Similarity matrix of shape ``(len(X), n_fitted)``."""
        check_is_fitted(self, "scaled_")
        graphs = check_graphs(X)
        scaled = self.scaler_.transform(self.vectorizer_.transform(graphs))
        d = _pnorm_accumulate(scaled[:, None, :], self.scaled_[None, :, :], self.config_.p)
        return self._to_similarity(d)

    def pairwise_distances(self):
        check_is_fitted(self, "scaled_")
        x = self.scaled_
        return _pnorm_accumulate(x[:, None, :], x[None, :, :], self.config_.p)

    def pairwise(self):
        """Symmetric similarity matrix of the fitted family (unit diagonal)."""
        return self._to_similarity(self.pairwise_distances())

    def pair_table(self, family=None):
        check_is_fitted(self, "scaled_")
        return _build_pair_table(self.labels_, self.scaled_, self.config_, family, self.n_jobs)


# pair tables ----------------------------------------------------------------


@dataclass
class PairTable:
    """All unordered pairs of a family, sorted ascending by similarity.

    Ties are broken by ``(label_a, label_b)``. Columns are parallel arrays;
    ``s_prime`` is filled by :func:`rescale_similarities`.
    """

    family: object
    config: object
    label_a: np.ndarray
    label_b: np.ndarray
    distance: np.ndarray
    similarity: np.ndarray
    s_prime: np.ndarray = None
    meta: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.similarity)

    def rows(self):
        for i in range(len(self)):
            row = (str(self.label_a[i]), str(self.label_b[i]), float(self.distance[i]), float(self.similarity[i]))
            if self.s_prime is not None:
                row += (float(self.s_prime[i]),)
            yield row

    def lookup(self):
        """Dict mapping ``(label_a, label_b)`` (both orders) to similarity."""
        out = {}
        for a, b, s in zip(self.label_a.tolist(), self.label_b.tolist(), self.similarity.tolist()):
            out[a, b] = out[b, a] = s
        return out

    def to_csv(self, path=None, distance_name="d_p", similarity_name="s_p"):
        """Write ``label_a,label_b,d_p,s_p[,s_prime]`` with round-trip floats.

        Returns the CSV text when ``path`` is None.
        """
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        header = ["label_a", "label_b", distance_name, similarity_name]
        if self.s_prime is not None:
            header.append("s_prime")
        w.writerow(header)
        for row in self.rows():
            w.writerow([row[0], row[1]] + [repr(v) for v in row[2:]])
        text = buf.getvalue()
        if path is None:
            return text
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        return None


def _row_distances(i, scaled, p):
    return _pnorm_accumulate(scaled[i][None, :], scaled[i + 1:], p)


def _build_pair_table(labels, scaled, cfg, family, n_jobs):
    m = len(labels)
    if m < 2:
        raise ValueError("a pair table needs at least two graphs")
    # one row per call keeps each pair's arithmetic identical for any n_jobs
    if n_jobs in (None, 1):
        blocks = [_row_distances(i, scaled, cfg.p) for i in range(m - 1)]
    else:
        blocks = Parallel(n_jobs=n_jobs)(delayed(_row_distances)(i, scaled, cfg.p) for i in range(m - 1))
    dist = np.concatenate(blocks)
    ia, ib = np.triu_indices(m, 1)
    labels = np.array(labels)
    la, lb = labels[ia], labels[ib]
    bound = max_distance(scaled.shape[1], cfg.p)
    sim = (bound - dist) / bound
    order = np.lexsort((lb, la, sim))
    return PairTable(family, cfg, la[order], lb[order], dist[order], sim[order])


def pair_table(family, cfg=None, family_id=None, n_jobs=None):
    """Similarity for all ``C(m, 2)`` pairs of ``family`` as a :class:`PairTable`."""
    cfg = cfg or SimilarityConfig()
    est = TopologicalSimilarity(cfg.indices, cfg.p, cfg.scaling, cfg.strict, n_jobs=n_jobs)
    return est.fit(family).pair_table(family_id)


def rescale_similarities(table):
    """Add the min-max rescaled similarity column ``s_prime``."""
    s = table.similarity
    lo, hi = float(s.min()), float(s.max())
    if hi == lo:
        raise DegenerateScalingError("all similarities are equal; cannot rescale")
    table.s_prime = (s - lo) / (hi - lo)
    return table


def _scaled_pair(g1, g2, cfg):
    check_graph(g1)
    check_graph(g2)
    ids = resolve_index_set(cfg.indices)
    raw = np.array([compute_vector(g1, ids).values, compute_vector(g2, ids).values])
    stats = family_stats(raw) if cfg.scaling == "per-family" else None
    return scale(raw, cfg.scaling, stats, strict=cfg.strict)


def distance_graphs(g1, g2, cfg=None):
    """``d_p`` between the scaled index vectors of two graphs.

    Under per-family scaling the family is ``{g1, g2}``.
    """
    cfg = cfg or SimilarityConfig()
    x = _scaled_pair(g1, g2, cfg)
    return float(_pnorm_accumulate(x[0:1], x[1:2], cfg.p)[0])


def similarity_p(g1, g2, cfg=None):
    """``s_p(g1, g2) = (k^(1/p) - d_p) / k^(1/p)``."""
    cfg = cfg or SimilarityConfig()
    bound = max_distance(cfg.k, cfg.p)
    return (bound - distance_graphs(g1, g2, cfg)) / bound

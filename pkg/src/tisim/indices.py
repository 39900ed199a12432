"""The ten topological indices and index-vector assembly.

Definitions (sums over unordered vertex pairs ``{u, v}``, ``u != v``)::

    Harary           sum 1 / d(u,v)
    Sombor           sum over edges sqrt(deg(u)^2 + deg(v)^2)
    DegreeDistance   sum (deg(u) + deg(v)) * d(u,v)
    Gutman           sum deg(u) * deg(v) * d(u,v)
    Energy           sum |lambda_i|
    Estrada          sum exp(lambda_i)
    FirstZagreb      sum over vertices deg(u)^2
    Randic           sum over edges 1 / sqrt(deg(u) * deg(v))
    ResolventEnergy  sum 1 / (n - lambda_i)
    Wiener           sum d(u,v)

``lambda_i`` are adjacency eigenvalues.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .graph import all_pairs_distances, check_connected, degrees
from .spectral import eigenvalues, estrada_index, graph_energy, resolvent_energy


class IndexId(str, Enum):
    HARARY = "Harary"
    SOMBOR = "Sombor"
    DEGREE_DISTANCE = "DegreeDistance"
    GUTMAN = "Gutman"
    ENERGY = "Energy"
    ESTRADA = "Estrada"
    FIRST_ZAGREB = "FirstZagreb"
    RANDIC = "Randic"
    RESOLVENT_ENERGY = "ResolventEnergy"
    WIENER = "Wiener"


ALL_INDICES = tuple(IndexId)
CORE_INDICES = ALL_INDICES[:6]
EXTENDED_INDICES = ALL_INDICES
INDEX_SETS = {"core": CORE_INDICES, "extended": EXTENDED_INDICES}


def resolve_index_set(indices):
    """Map ``"core"``/``"extended"`` or an explicit sequence to IndexIds."""
    if isinstance(indices, str):
        try:
            ids = INDEX_SETS[indices]
        except KeyError:
            raise ValueError(f"unknown index set {indices!r}; use 'core' or 'extended'") from None
    else:
        ids = tuple(IndexId(i) for i in indices)
    if len(ids) < 3:
        raise ValueError(f"at least 3 indices are required, got {len(ids)}")
    if len(set(ids)) != len(ids):
        raise ValueError("duplicate index in selection")
    return ids


@dataclass(frozen=True)
class IndexVector:
    label: object
    ids: tuple
    values: tuple

    def __len__(self):
        return len(self.values)

    def as_array(self):
        return np.array(self.values, dtype=np.float64)

    def as_dict(self):
        return {i.value: v for i, v in zip(self.ids, self.values)}


class _Artifacts:
    """Per-graph cache of distance matrix, degrees and spectrum."""

    def __init__(self, g):
        self.g = check_connected(g)
        self._dist = None
        self._deg = None
        self._spec = None

    @property
    def dist(self):
        if self._dist is None:
            self._dist = all_pairs_distances(self.g)
        return self._dist

    @property
    def deg(self):
        if self._deg is None:
            self._deg = degrees(self.g)
        return self._deg

    @property
    def spectrum(self):
        if self._spec is None:
            self._spec = eigenvalues(self.g)
        return self._spec

    def upper(self):
        return np.triu_indices(self.g.n, 1)

    def edge_degrees(self):
        us, vs = np.nonzero(np.triu(self.g.adjacency, 1))
        return self.deg[us].astype(np.float64), self.deg[vs].astype(np.float64)


def _harary(a):
    iu = a.upper()
    return float(np.sum(1.0 / a.dist[iu]))


def _sombor(a):
    du, dv = a.edge_degrees()
    return float(np.sum(np.sqrt(du * du + dv * dv)))


def _degree_distance(a):
    iu, ju = a.upper()
    d = a.deg
    return float(np.sum((d[iu] + d[ju]) * a.dist[iu, ju]))


def _gutman(a):
    iu, ju = a.upper()
    d = a.deg
    return float(np.sum(d[iu] * d[ju] * a.dist[iu, ju]))


def _first_zagreb(a):
    return float(np.sum(a.deg ** 2))


def _randic(a):
    du, dv = a.edge_degrees()
    return float(np.sum(1.0 / np.sqrt(du * dv)))


def _wiener(a):
    return float(np.sum(a.dist[a.upper()]))


_EVALUATORS = {
    IndexId.HARARY: _harary,
    IndexId.SOMBOR: _sombor,
    IndexId.DEGREE_DISTANCE: _degree_distance,
    IndexId.GUTMAN: _gutman,
    IndexId.ENERGY: lambda a: graph_energy(a.g, a.spectrum),
    IndexId.ESTRADA: lambda a: estrada_index(a.g, a.spectrum),
    IndexId.FIRST_ZAGREB: _first_zagreb,
    IndexId.RANDIC: _randic,
    IndexId.RESOLVENT_ENERGY: lambda a: resolvent_energy(a.g, a.spectrum),
    IndexId.WIENER: _wiener,
}


def compute_index(g, index_id):
    return _EVALUATORS[IndexId(index_id)](_Artifacts(g))


def harary(g):
    return compute_index(g, IndexId.HARARY)


def sombor(g):
    return compute_index(g, IndexId.SOMBOR)


def degree_distance(g):
    return compute_index(g, IndexId.DEGREE_DISTANCE)


def gutman(g):
    return compute_index(g, IndexId.GUTMAN)


def first_zagreb(g):
    return compute_index(g, IndexId.FIRST_ZAGREB)


def randic(g):
    return compute_index(g, IndexId.RANDIC)


def wiener(g):
    return compute_index(g, IndexId.WIENER)


def compute_vector(g, indices="core"):
    """Evaluate the selected indices on ``g``, in fixed :class:`IndexId` order.

    Distances, degrees and the spectrum are computed at most once.
    """
    ids = resolve_index_set(indices)
    ids = tuple(i for i in ALL_INDICES if i in ids)
    art = _Artifacts(g)
    values = tuple(_EVALUATORS[i](art) for i in ids)
    if not all(np.isfinite(values)):
        raise ArithmeticError(f"non-finite index value for graph {g.label!r}: {values}")
    return IndexVector(g.label, ids, values)

"""Seeded Erdos-Renyi, Barabasi-Albert and Watts-Strogatz generators.

All randomness comes from numpy's PCG64 bit generator. Draw ``k`` of a spec
with seed ``s`` uses ``PCG64([s, k])``; draws that come out disconnected are
discarded and the next ``k`` is tried, up to :data:`MAX_ATTEMPTS`.
"""

import itertools
import json
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from .exceptions import GenerationError
from .graph import Graph, is_connected, write_graph6

GENERATOR_ID = f"numpy.random.PCG64/seedseq[seed,attempt]/numpy-{np.__version__.split('.')[0]}"
MAX_ATTEMPTS = 1000
MODELS = ("ER", "BA", "WS")


@dataclass(frozen=True)
class ModelSpec:
    """Parameters of one random-network model.

    ``p`` is the edge probability (ER) or rewiring probability (WS); ``m`` the
    attachment count (BA); ``k`` the ring degree (WS).
    """

    model: str
    n: int
    p: float = None
    m: int = None
    k: int = None
    seed: int = 0

    def __post_init__(self):
        model = self.model.upper()
        object.__setattr__(self, "model", model)
        if model not in MODELS:
            raise ValueError(f"model must be one of {MODELS}, got {self.model!r}")
        if self.n < 1:
            raise ValueError("n must be positive")
        if model == "ER":
            if self.p is None or not 0.0 <= self.p <= 1.0:
                raise ValueError("ER needs 0 <= p <= 1")
        elif model == "BA":
            if self.m is None or not 1 <= self.m < self.n:
                raise ValueError("BA needs 1 <= m < n")
        else:
            if self.k is None or self.k % 2 or not 2 <= self.k < self.n:
                raise ValueError("WS needs an even k with 2 <= k < n")
            if self.p is None or not 0.0 <= self.p <= 1.0:
                raise ValueError("WS needs 0 <= p <= 1")

    def with_seed(self, seed):
        return ModelSpec(self.model, self.n, self.p, self.m, self.k, seed)

    def as_dict(self):
        return {k: v for k, v in asdict(self).items() if v is not None}


def _rng(seed, attempt):
    return np.random.Generator(np.random.PCG64([int(seed) & (2 ** 64 - 1), attempt]))


def erdos_renyi(n, p, rng):
    """Each pair independently, in lexicographic pair order."""
    adj = np.zeros((n, n), dtype=bool)
    iu, ju = np.triu_indices(n, 1)
    keep = rng.random(iu.size) < p
    adj[iu[keep], ju[keep]] = True
    return adj | adj.T


def barabasi_albert(n, m, rng):
    """Complete graph on ``m + 1`` nodes, then ``m`` degree-proportional edges per node.

    Targets are drawn from the multiset of edge endpoints and redrawn on
    repeats, so each new node gets ``m`` distinct neighbours.
    """
    adj = np.zeros((n, n), dtype=bool)
    endpoints = []
    for u, v in itertools.combinations(range(m + 1), 2):
        adj[u, v] = adj[v, u] = True
        endpoints += [u, v]
    for new in range(m + 1, n):
        targets = []
        while len(targets) < m:
            t = endpoints[int(rng.integers(len(endpoints)))]
            if t not in targets:
                targets.append(t)
        for t in targets:
            adj[new, t] = adj[t, new] = True
            endpoints += [new, t]
    return adj


def watts_strogatz(n, k, p, rng):
    """Ring lattice with ``k/2`` neighbours per side, far endpoints rewired.

    Edge ``(u, u + j)`` is visited for ``j = 1..k/2`` (outer) and ``u``
    (inner); with probability ``p`` its far endpoint moves to a uniformly
    chosen vertex that is neither ``u`` nor already adjacent to ``u``. Edge
    count stays ``n k / 2``.
    """
    adj = np.zeros((n, n), dtype=bool)
    for j in range(1, k // 2 + 1):
        for u in range(n):
            v = (u + j) % n
            adj[u, v] = adj[v, u] = True
    for j in range(1, k // 2 + 1):
        for u in range(n):
            v = (u + j) % n
            if rng.random() >= p or not adj[u, v]:
                continue
            candidates = np.flatnonzero(~adj[u])
            candidates = candidates[candidates != u]
            if candidates.size == 0:
                continue
            w = int(candidates[rng.integers(candidates.size)])
            adj[u, v] = adj[v, u] = False
            adj[u, w] = adj[w, u] = True
    return adj


def _draw(spec, rng):
    if spec.model == "ER":
        return erdos_renyi(spec.n, spec.p, rng)
    if spec.model == "BA":
        return barabasi_albert(spec.n, spec.m, rng)
    return watts_strogatz(spec.n, spec.k, spec.p, rng)


def generate(spec, label=None):
    """Connected graph drawn from ``spec``; identical for identical specs."""
    for attempt in range(MAX_ATTEMPTS):
        g = Graph(_draw(spec, _rng(spec.seed, attempt)), label=label)
        if is_connected(g):
            return g
    raise GenerationError(
        f"{MAX_ATTEMPTS} consecutive disconnected draws for {spec.as_dict()}; "
        "connectivity is improbable for these parameters")


def generate_batch(spec, count, base_seed=None):
    """``count`` graphs with seeds ``base_seed + i``, labelled ``<MODEL>_<i+1>``."""
    if count < 1:
        raise ValueError("count must be >= 1")
    base = spec.seed if base_seed is None else base_seed
    return [generate(spec.with_seed(base + i), label=f"{spec.model}_{i + 1}") for i in range(count)]


def write_batch(graphs, spec, base_seed, path):
    """Write graphs as graph6 plus a ``.meta.json`` sidecar; returns both paths."""
    path = Path(path)
    write_graph6(path, graphs)
    meta = {
        "spec": spec.with_seed(base_seed).as_dict(),
        "base_seed": base_seed,
        "count": len(graphs),
        "labels": [g.label for g in graphs],
        "generator": GENERATOR_ID,
    }
    meta_path = path.with_name(path.name + ".meta.json")
    meta_path.write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path, meta_path

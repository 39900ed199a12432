"""Exact graph edit distance for small unlabeled graphs.

Elementary operations are vertex insertion, vertex deletion, edge insertion
and edge deletion, each of unit cost. Both graphs are padded with isolated
dummy vertices to a common order ``N`` and the search runs over bijections:
a real vertex mapped to a dummy is a deletion (and vice versa an insertion),
and every edge present on exactly one side of the mapping is one edge edit.

With ``N = max(n1, n2)`` this is exact: mapping a vertex of ``g1`` directly to
a vertex of ``g2`` never costs more than deleting one and inserting the
other, because it replaces two vertex operations plus all incident edge
edits by at most the incident edge edits.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .exceptions import BudgetExceededError
from .graph import check_connected

GED_MAX_N = 10


@dataclass(frozen=True)
class EditDistanceResult:
    ged: int
    # mapping[u] = v (vertex of g2) or None when u is deleted
    mapping: tuple
    inserted: tuple  # vertices of g2 with no preimage

    @property
    def similarity(self):
        return 1.0 / (self.ged + 1)


def _padded(adj, size):
    out = np.zeros((size, size), dtype=np.int8)
    n = adj.shape[0]
    out[:n, :n] = adj
    return out


class _BranchAndBound:
    """Depth-first search over assignments, highest-degree vertices first.

    The bound for a partial assignment solves a linear assignment problem
    over the unassigned vertices. Mapping ``u -> v`` is charged its vertex
    edit, its edge edits towards already assigned vertices, and half of
    ``|deg_rest(u) - deg_rest(v)|``, where ``deg_rest`` counts neighbours
    among unassigned vertices. Each edge edit among unassigned vertices
    touches two of them, so the bound is admissible. It is never weaker
    than half the L1 distance between the sorted remaining degree
    sequences.
    """

    def __init__(self, a, b, real_a, real_b):
        self.a = a
        self.b = b
        self.real_a = real_a.astype(np.int8)
        self.real_b = real_b.astype(np.int8)
        self.size = a.shape[0]
        deg_a = a.sum(axis=1)
        self.order = sorted(range(self.size), key=lambda u: (-int(deg_a[u]), not real_a[u], u))

    def _costs(self, depth, mapping, free_b):
        assigned = self.order[:depth]
        rest_a = self.order[depth:]
        images = [mapping[w] for w in assigned]
        a_rows = self.a[rest_a]
        b_rows = self.b[free_b]
        cross = (a_rows[:, None, assigned] != b_rows[None, :, images]).sum(axis=2)
        vertex = self.real_a[rest_a][:, None] != self.real_b[free_b][None, :]
        step = cross + vertex
        da = a_rows[:, rest_a].sum(axis=1)
        db = b_rows[:, free_b].sum(axis=1)
        inner = np.abs(da[:, None] - db[None, :]) / 2.0
        return step, step + inner

    def run(self, upper_bound, initial_map):
        self.best = upper_bound
        self.best_map = list(initial_map)
        self._dfs(0, 0, [-1] * self.size, list(range(self.size)))
        return self.best, self.best_map

    def _dfs(self, depth, cost, mapping, free_b):
        if depth == self.size:
            if cost < self.best:
                self.best = cost
                self.best_map = list(mapping)
            return
        step, bound_matrix = self._costs(depth, mapping, free_b)
        rows, cols = linear_sum_assignment(bound_matrix)
        bound = math.ceil(bound_matrix[rows, cols].sum() - 1e-9)
        if cost + bound >= self.best:
            return
        u = self.order[depth]
        first = step[0]
        for j in sorted(range(len(free_b)), key=lambda j: (bound_matrix[0, j], free_b[j])):
            if cost + first[j] >= self.best:
                continue
            v = free_b[j]
            mapping[u] = v
            self._dfs(depth + 1, cost + int(first[j]), mapping, free_b[:j] + free_b[j + 1:])
            mapping[u] = -1


def _mapping_cost(a, b, real_a, real_b, mapping):
    perm = np.asarray(mapping)
    vertex = int(np.sum(real_a != real_b[perm]))
    edges = int(np.sum(a != b[np.ix_(perm, perm)])) // 2
    return vertex + edges


def edit_distance_padded(adj1, adj2, size=None):
    """Minimum edit cost over bijections after padding both graphs to ``size``.

    ``size`` defaults to ``max(n1, n2)``; any larger value gives the same
    optimum and exists for cross-checking. Returns ``(cost, mapping)`` where
    ``mapping[u]`` is the padded vertex of graph 2 assigned to ``u``.
    """
    n1, n2 = adj1.shape[0], adj2.shape[0]
    size = max(n1, n2) if size is None else size
    if size < max(n1, n2):
        raise ValueError("size must be at least max(n1, n2)")
    a = _padded(adj1, size)
    b = _padded(adj2, size)
    real_a = np.arange(size) < n1
    real_b = np.arange(size) < n2
    search = _BranchAndBound(a, b, real_a, real_b)
    # greedy seed: match both sides in descending-degree order
    deg_b = b.sum(axis=1)
    order_b = sorted(range(size), key=lambda v: (-int(deg_b[v]), not real_b[v], v))
    seed = [0] * size
    for u, v in zip(search.order, order_b):
        seed[u] = v
    upper = _mapping_cost(a, b, real_a, real_b, seed)
    return search.run(upper + 1, seed)


def ged(g1, g2):
    """Exact unit-cost graph edit distance between two connected graphs."""
    check_connected(g1)
    check_connected(g2)
    n1, n2 = g1.n, g2.n
    if max(n1, n2) > GED_MAX_N:
        raise BudgetExceededError(f"exact GED is limited to n <= {GED_MAX_N}, got {max(n1, n2)}")
    cost, perm = edit_distance_padded(g1.adjacency, g2.adjacency)
    mapping = tuple(int(perm[u]) if perm[u] < n2 else None for u in range(n1))
    hit = {v for v in mapping if v is not None}
    inserted = tuple(v for v in range(n2) if v not in hit)
    return EditDistanceResult(int(cost), mapping, inserted)


def s_ged(g1, g2):
    """``1 / (GED + 1)``."""
    return ged(g1, g2).similarity

"""Canonical certificates and exhaustive generation of small graph families.

Certificates use colour refinement followed by individualisation of the
first non-singleton cell; the lexicographically largest adjacency string
over all leaves of that search tree is the certificate. Twin vertices in a
cell are explored once, since swapping twins is an automorphism.
"""

import itertools
from dataclasses import dataclass

import numpy as np

from .exceptions import BudgetExceededError
from .graph import Graph, is_connected, read_graph6

CERTIFICATE_MAX_N = 10
TREES_MAX_N = 12
CONNECTED_MAX_N = 7


# certificates ---------------------------------------------------------------


def _refine(nbrs, colors):
    """Colour refinement to a stable partition; colours are ranks 0..c-1."""
    n = len(colors)
    n_colors = len(set(colors))
    while True:
        sigs = [(colors[v], tuple(sorted(colors[u] for u in nbrs[v]))) for v in range(n)]
        ranks = {s: r for r, s in enumerate(sorted(set(sigs)))}
        new = [ranks[s] for s in sigs]
        if len(ranks) == n_colors:
            return new
        colors, n_colors = new, len(ranks)


def _leaf_code(adj, colors):
    order = np.argsort(colors, kind="stable")
    sub = adj[np.ix_(order, order)]
    return np.packbits(sub[np.triu_indices(len(colors), 1)]).tobytes()


def _search(adj, nbrs, colors):
    n = len(colors)
    counts = np.bincount(colors, minlength=n)
    if counts.max() == 1:
        return _leaf_code(adj, colors)
    target = int(np.flatnonzero(counts > 1)[0])
    cell = [v for v in range(n) if colors[v] == target]
    best = None
    tried = []
    for v in cell:
        if any(_twins(adj, v, u) for u in tried):
            continue
        tried.append(v)
        # v keeps the cell's colour slot; the rest of the cell moves up by one
        child = [2 * c + (1 if (c == target and u != v) else 0) for u, c in enumerate(colors)]
        code = _search(adj, nbrs, _refine(nbrs, child))
        if best is None or code > best:
            best = code
    return best


def _twins(adj, u, v):
    row_u = adj[u].copy()
    row_v = adj[v].copy()
    row_u[v] = row_v[u] = False
    return np.array_equal(row_u, row_v)


def _certificate(g):
    adj = g.adjacency
    nbrs = g.neighbors
    colors = _refine(nbrs, [0] * g.n)
    return bytes([g.n]) + _search(adj, nbrs, colors)


def canonical_certificate(g):
    """Byte string equal for two graphs iff they are isomorphic (``n <= 10``)."""
    if g.n > CERTIFICATE_MAX_N:
        raise BudgetExceededError(
            f"canonical certificates are limited to n <= {CERTIFICATE_MAX_N}, got {g.n}")
    return _certificate(g)


def are_isomorphic(g1, g2):
    if g1.n != g2.n or g1.n_edges != g2.n_edges:
        return False
    return canonical_certificate(g1) == canonical_certificate(g2)


# families -------------------------------------------------------------------


@dataclass(frozen=True)
class FamilySpec:
    kind: str  # "trees" | "connected" | "capped-trees"
    n: int
    max_degree: int = None

    def __post_init__(self):
        if self.kind not in ("trees", "connected", "capped-trees"):
            raise ValueError(f"unknown family kind {self.kind!r}")
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.kind == "connected" and self.n > CONNECTED_MAX_N:
            raise BudgetExceededError(f"connected-graph families are limited to n <= {CONNECTED_MAX_N}")
        if self.kind != "connected" and self.n > TREES_MAX_N:
            raise BudgetExceededError(f"tree families are limited to n <= {TREES_MAX_N}")
        if self.kind == "capped-trees" and (self.max_degree is None or self.max_degree < 2):
            raise ValueError("capped-trees needs max_degree >= 2")

    def generate(self):
        if self.kind == "connected":
            return enumerate_connected_graphs(self.n)
        return enumerate_trees(self.n, self.max_degree)


def _sorted_family(graphs, prefix):
    keyed = sorted(((_certificate(g), g) for g in graphs), key=lambda t: t[0])
    width = len(str(len(keyed) - 1))
    return [g.with_label(f"{prefix}_{i:0{width}d}") for i, (_, g) in enumerate(keyed)]


def _rooted_level_sequences(n):
    """All rooted trees on ``n`` vertices as canonical level sequences.

    Beyer-Hedetniemi successor rule, root at level 0, produced in
    decreasing lexicographic order starting from the path.
    """
    seq = list(range(n))
    while True:
        yield tuple(seq)
        p = max((i for i in range(n) if seq[i] > 1), default=None)
        if p is None:
            return
        q = max(i for i in range(p) if seq[i] == seq[p] - 1)
        for i in range(p, n):
            seq[i] = seq[i - (p - q)]


def _children_heights(seq):
    """Heights of the root's child subtrees for a level sequence."""
    heights = []
    for i in range(1, len(seq)):
        if seq[i] == 1:
            heights.append(0)
        else:
            heights[-1] = max(heights[-1], seq[i] - 1)
    return heights


def _level_edges(seq, offset=0):
    edges = []
    last_at = {}
    for i, lev in enumerate(seq):
        if lev > 0:
            edges.append((last_at[lev - 1] + offset, i + offset))
        last_at[lev] = i
    return edges


def _free_tree_edges(n):
    """Edge lists of all free trees on ``n`` vertices, one per class.

    A free tree has a unique centre or bicentre. Unicentral trees are rooted
    trees whose two tallest root branches tie; bicentral trees join the roots
    of two rooted trees of equal height, taken as unordered pairs.
    """
    if n == 1:
        yield []
        return
    if n == 2:
        yield [(0, 1)]
        return
    for seq in _rooted_level_sequences(n):
        hs = sorted(_children_heights(seq), reverse=True)
        if len(hs) >= 2 and hs[0] == hs[1]:
            yield _level_edges(seq)
    rooted = {size: {} for size in range(1, n)}
    for size in range(1, n):
        for seq in _rooted_level_sequences(size):
            rooted[size].setdefault(max(seq), []).append(seq)
    for size_a in range(1, n // 2 + 1):
        size_b = n - size_a
        for height, group_a in rooted[size_a].items():
            group_b = rooted[size_b].get(height, [])
            for i, a in enumerate(group_a):
                for b in (group_b[i:] if size_a == size_b else group_b):
                    yield _level_edges(a) + _level_edges(b, size_a) + [(0, size_a)]


def enumerate_trees(n, max_degree=None, label_prefix=None):
    """One representative per isomorphism class of free trees on ``n`` vertices.

    ``max_degree`` caps vertex degree (4 gives alkane carbon skeletons).
    Output is sorted by canonical certificate.
    """
    if not 1 <= n <= TREES_MAX_N:
        raise BudgetExceededError(f"tree enumeration supports 1 <= n <= {TREES_MAX_N}, got {n}")
    if max_degree is not None and max_degree < 2 and n > 2:
        return []
    trees = []
    for edges in _free_tree_edges(n):
        g = Graph.from_edges(n, edges)
        if max_degree is None or g.adjacency.sum(axis=1).max(initial=0) <= max_degree:
            trees.append(g)
    prefix = label_prefix or (f"T{n}" if max_degree is None else f"T{n}d{max_degree}")
    return _sorted_family(trees, prefix)


def enumerate_alkanes(carbons):
    """Hydrogen-suppressed carbon skeletons of the C_n alkanes."""
    return enumerate_trees(carbons, max_degree=4, label_prefix=f"C{carbons}")


def _pair_index(n):
    idx = {}
    for k, (i, j) in enumerate(itertools.combinations(range(n), 2)):
        idx[i, j] = idx[j, i] = k
    return idx


def enumerate_connected_graphs(n, label_prefix=None):
    """One representative per isomorphism class of connected graphs on ``n`` vertices.

    Walks all ``2**C(n,2)`` labelled graphs in increasing bit-code order.
    The first unseen code of each class is its orbit minimum; the whole orbit
    under vertex permutations is then marked seen, so each class is
    produced once. Output is sorted by canonical certificate.
    """
    if not 1 <= n <= CONNECTED_MAX_N:
        raise BudgetExceededError(
            f"connected-graph enumeration supports 1 <= n <= {CONNECTED_MAX_N}, got {n}")
    pairs = list(itertools.combinations(range(n), 2))
    n_pairs = len(pairs)
    idx = _pair_index(n)
    perms = list(itertools.permutations(range(n)))
    # weight[p, e]: bit value that edge e takes after permutation p
    weight = np.array([[1 << idx[p[i], p[j]] for (i, j) in pairs] for p in perms], dtype=np.int64)
    bit_vals = 1 << np.arange(n_pairs, dtype=np.int64)
    seen = np.zeros(1 << n_pairs, dtype=bool)
    reps = []
    code = 0
    total = 1 << n_pairs
    while code < total:
        bits = (code & bit_vals) != 0
        orbit = weight[:, bits].sum(axis=1)
        seen[orbit] = True
        g = Graph.from_edges(n, [pairs[e] for e in np.flatnonzero(bits)])
        if is_connected(g):
            reps.append(g)
        rest = np.flatnonzero(~seen[code + 1:])
        if rest.size == 0:
            break
        code = code + 1 + int(rest[0])
    return _sorted_family(reps, label_prefix or f"N{n}")


def load_family(path):
    """Graphs from a graph6 file, in file order, labelled by their graph6 line.

    Duplicate lines keep their content and get a ``#k`` suffix so labels
    stay unique.
    """
    graphs = read_graph6(path)
    counts = {}
    out = []
    for g in graphs:
        k = counts.get(g.label, 0)
        counts[g.label] = k + 1
        out.append(g if k == 0 else g.with_label(f"{g.label}#{k}"))
    return out

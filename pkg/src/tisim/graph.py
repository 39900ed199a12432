"""Simple undirected graphs, the graph6 codec and shortest-path distances.

A :class:`Graph` is immutable. The boolean adjacency matrix is the source of
truth; adjacency lists and degrees are derived from it on demand.
"""

from collections import deque
from functools import cached_property
from pathlib import Path

import numpy as np

from .exceptions import DisconnectedGraphError, GraphFormatError

GRAPH6_MAX_N = 62
GRAPH6_HEADER = ">>graph6<<"


class Graph:
    """Undirected simple graph on vertices ``0..n-1``.

    Parameters
    ----------
    adjacency : array-like of shape (n, n)
        Symmetric 0/1 matrix with an empty diagonal.
    label : str, optional
        Free-text identifier carried through tables and CSV output.
    """

    def __init__(self, adjacency, label=None):
        adj = np.array(adjacency, dtype=bool, copy=True)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise GraphFormatError(f"adjacency must be square, got shape {adj.shape}")
        if adj.shape[0] < 1:
            raise GraphFormatError("a graph needs at least one vertex")
        if adj.diagonal().any():
            raise GraphFormatError("self-loops are not allowed")
        if not np.array_equal(adj, adj.T):
            raise GraphFormatError("adjacency matrix is not symmetric")
        adj.setflags(write=False)
        self._adj = adj
        self.label = label

    @classmethod
    def from_edges(cls, n, edges, label=None):
        adj = np.zeros((n, n), dtype=bool)
        for u, v in edges:
            if u == v:
                raise GraphFormatError(f"self-loop at vertex {u}")
            adj[u, v] = adj[v, u] = True
        return cls(adj, label=label)

    @property
    def n(self):
        return self._adj.shape[0]

    @property
    def adjacency(self):
        """Read-only boolean adjacency matrix."""
        return self._adj

    @cached_property
    def n_edges(self):
        return int(self._adj.sum()) // 2

    @cached_property
    def neighbors(self):
        """Tuple of sorted neighbour tuples, one per vertex."""
        return tuple(tuple(int(v) for v in np.flatnonzero(row)) for row in self._adj)

    def edges(self):
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        us, vs = np.nonzero(np.triu(self._adj, 1))
        return [(int(u), int(v)) for u, v in zip(us, vs)]

    def relabel(self, perm, label=None):
        """Return the graph with vertex ``u`` renamed to ``perm[u]``."""
        perm = np.asarray(perm)
        if sorted(perm.tolist()) != list(range(self.n)):
            raise ValueError("perm must be a permutation of range(n)")
        inv = np.argsort(perm)
        return Graph(self._adj[np.ix_(inv, inv)], label=self.label if label is None else label)

    def with_label(self, label):
        return Graph(self._adj, label=label)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return np.array_equal(self._adj, other._adj)

    def __hash__(self):
        return hash((self.n, np.packbits(self._adj).tobytes()))

    def __repr__(self):
        name = f" {self.label!r}" if self.label is not None else ""
        return f"<Graph{name} n={self.n} m={self.n_edges}>"


def complete_graph(n, label=None):
    return Graph(~np.eye(n, dtype=bool), label=label)


def path_graph(n, label=None):
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)], label=label)


def cycle_graph(n, label=None):
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)], label=label)


def star_graph(n, label=None):
    """Star on ``n`` vertices with centre 0."""
    return Graph.from_edges(n, [(0, i) for i in range(1, n)], label=label)


def degrees(g):
    """Degree sequence in vertex order, as an int64 array."""
    return g.adjacency.sum(axis=1).astype(np.int64)


def is_connected(g):
    seen = np.zeros(g.n, dtype=bool)
    seen[0] = True
    queue = deque([0])
    nbrs = g.neighbors
    while queue:
        u = queue.popleft()
        for v in nbrs[u]:
            if not seen[v]:
                seen[v] = True
                queue.append(v)
    return bool(seen.all())


def check_connected(g):
    if not is_connected(g):
        name = f" {g.label!r}" if g.label is not None else ""
        raise DisconnectedGraphError(f"graph{name} is not connected")
    return g


def all_pairs_distances(g):
    """Shortest-path distance matrix by Floyd-Warshall.

    Raises :class:`DisconnectedGraphError` rather than returning infinite
    entries.
    """
    n = g.n
    inf = n + 1
    dist = np.where(g.adjacency, 1, inf).astype(np.int64)
    np.fill_diagonal(dist, 0)
    for k in range(n):
        np.minimum(dist, dist[:, k, None] + dist[None, k, :], out=dist)
    if (dist >= inf).any():
        raise DisconnectedGraphError("graph is not connected; distances are infinite")
    dist.setflags(write=False)
    return dist


# graph6 ---------------------------------------------------------------------


def _pair_bits(n):
    """Upper-triangle pairs in graph6 bit order (column-major)."""
    return [(i, j) for j in range(1, n) for i in range(j)]


def encode_graph6(g):
    n = g.n
    if n > GRAPH6_MAX_N:
        raise ValueError(f"graph6 short form supports n <= {GRAPH6_MAX_N}, got {n}")
    adj = g.adjacency
    bits = [int(adj[i, j]) for i, j in _pair_bits(n)]
    bits += [0] * (-len(bits) % 6)
    out = [chr(n + 63)]
    for k in range(0, len(bits), 6):
        value = 0
        for b in bits[k:k + 6]:
            value = (value << 1) | b
        out.append(chr(value + 63))
    return "".join(out)


def parse_graph6(text, label=None):
    """Decode one graph6 line (short form only).

    Leading ``>>graph6<<`` headers and trailing line endings are tolerated.
    """
    line = text.rstrip("\r\n")
    start = 0
    if line.startswith(GRAPH6_HEADER):
        start = len(GRAPH6_HEADER)
    body = line[start:]
    if not body:
        raise GraphFormatError("empty graph6 string", offset=start)
    for i, ch in enumerate(body):
        if not 63 <= ord(ch) <= 126:
            raise GraphFormatError(f"character {ch!r} outside the graph6 alphabet", offset=start + i)
    n = ord(body[0]) - 63
    if n == 63:
        raise GraphFormatError("long-form graph6 (n > 62) is not supported", offset=start)
    if n == 0:
        raise GraphFormatError("graph6 string encodes an empty graph", offset=start)
    pairs = _pair_bits(n)
    expected = 1 + (len(pairs) + 5) // 6
    if len(body) < expected:
        raise GraphFormatError(
            f"truncated graph6 data: expected {expected} bytes for n={n}, got {len(body)}",
            offset=start + len(body))
    if len(body) > expected:
        raise GraphFormatError("trailing characters after graph6 data", offset=start + expected)
    adj = np.zeros((n, n), dtype=bool)
    k = 0
    for ch in body[1:]:
        value = ord(ch) - 63
        for shift in range(5, -1, -1):
            if k < len(pairs):
                if (value >> shift) & 1:
                    i, j = pairs[k]
                    adj[i, j] = adj[j, i] = True
                k += 1
    return Graph(adj, label=label)


def read_graph6_lines(lines, label_prefix=None):
    """Parse an iterable of graph6 lines. Blank lines are skipped."""
    graphs = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\r\n")
        if lineno == 1 and line.startswith(GRAPH6_HEADER):
            line = line[len(GRAPH6_HEADER):]
        if not line.strip():
            continue
        label = line if label_prefix is None else f"{label_prefix}{len(graphs)}"
        try:
            graphs.append(parse_graph6(line, label=label))
        except GraphFormatError as exc:
            raise GraphFormatError(exc.reason, offset=exc.offset, line=lineno) from exc
    return graphs


def read_graph6(path, label_prefix=None):
    with open(path, "r", encoding="latin-1", newline="") as fh:
        return read_graph6_lines(fh, label_prefix=label_prefix)


def write_graph6(path, graphs):
    Path(path).write_bytes("".join(encode_graph6(g) + "\n" for g in graphs).encode("ascii"))

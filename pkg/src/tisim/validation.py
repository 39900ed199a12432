"""Input validation helpers shared by the estimators and functional API."""

import numbers

from .graph import Graph, check_connected

SCALING_MODES = ("per-graph", "per-family")


def check_graph(g, connected=True):
    if not isinstance(g, Graph):
        raise TypeError(f"expected a Graph, got {type(g).__name__}")
    if connected:
        check_connected(g)
    return g


def check_graphs(graphs, connected=True, min_graphs=1):
    """Validate a sequence of graphs and return it as a list."""
    if isinstance(graphs, Graph):
        raise TypeError("expected a sequence of graphs, got a single Graph")
    graphs = list(graphs)
    if len(graphs) < min_graphs:
        raise ValueError(f"need at least {min_graphs} graph(s), got {len(graphs)}")
    for g in graphs:
        check_graph(g, connected=connected)
    return graphs


def family_labels(graphs):
    """Labels of ``graphs``; unlabeled graphs get ``G<index>``. Must be unique."""
    width = len(str(max(len(graphs) - 1, 0)))
    labels = [str(g.label) if g.label is not None else f"G{i:0{width}d}" for i, g in enumerate(graphs)]
    seen = set()
    for lab in labels:
        if lab in seen:
            raise ValueError(f"duplicate graph label {lab!r} in family")
        seen.add(lab)
    return labels


def check_p(p):
    if not isinstance(p, numbers.Real) or isinstance(p, bool):
        raise TypeError(f"p must be a real number, got {p!r}")
    p = float(p)
    if not p >= 1.0 or p == float("inf"):
        raise ValueError(f"p must be a finite real >= 1, got {p}")
    return p


def check_scaling(scaling):
    mode = str(scaling).lower().replace("_", "-")
    aliases = {"pergraph": "per-graph", "perfamily": "per-family"}
    mode = aliases.get(mode, mode)
    if mode not in SCALING_MODES:
        raise ValueError(f"scaling must be one of {SCALING_MODES}, got {scaling!r}")
    return mode

import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from tisim.enumeration import enumerate_alkanes, enumerate_connected_graphs, enumerate_trees  # noqa: E402
from tisim.graph import Graph  # noqa: E402

# acceptance outcomes, printed in the terminal summary: {criterion: (ok, detail)}
ACCEPTANCE = {}


@pytest.fixture(scope="session")
def n7():
    return enumerate_connected_graphs(7)


@pytest.fixture(scope="session")
def t7():
    return enumerate_trees(7)


@pytest.fixture(scope="session")
def decanes():
    return enumerate_alkanes(10)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def relabel_random(g, rng):
    return g.relabel(rng.permutation(g.n))


def from_adj(adj, label=None):
    return Graph(np.asarray(adj, dtype=bool), label=label)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"criterion {key:2d}: {'PASS' if ok else 'FAIL'}  {detail}")

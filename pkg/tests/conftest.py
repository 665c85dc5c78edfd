import itertools

import networkx as nx
import pytest
from hypothesis import strategies as st

from ramseycert.core import CYCLIC, LINEAR, DistanceColoring, stored_range

TABLE1 = {
    1: "2 6 9 10 17 21 24 25 28 32 39 40 55 62 75",
    2: "49 56 59 63 64 66 67 69 70 71 72 73 74 76 77 78 79 80 81 82 83 84 85 86",
    3: "1 5 11 12 15 19 20 22 27 29 30 34 37 38 44 48 50 51 54 58 60 61 68",
    4: "3 4 7 8 13 14 16 18 23 26 31 33 35 36 41 42 43 45 46 47 52 53 57 65",
}


def table1():
    return DistanceColoring.from_sets(173, CYCLIC, {s: map(int, v.split()) for s, v in TABLE1.items()})


def nx_clique_numbers(c: DistanceColoring) -> list[int]:
    """Per-colour clique numbers of the explicit graph, via networkx."""
    t = c.table
    out = []
    for s in range(1, c.num_colors + 1):
        g = nx.Graph()
        g.add_edges_from((u, v) for u, v in itertools.combinations(range(c.order), 2)
                         if t[v - u] == s)
        out.append(max((len(q) for q in nx.find_cliques(g)), default=0))
    return out


@st.composite
def colourings(draw, max_order=20, max_colors=4, modes=(LINEAR, CYCLIC), min_order=2):
    n = draw(st.integers(min_order, max_order))
    mode = draw(st.sampled_from(modes))
    r = draw(st.integers(1, max_colors))
    lengths = list(stored_range(n, mode))
    cols = draw(st.lists(st.integers(1, r), min_size=len(lengths), max_size=len(lengths)))
    return DistanceColoring.from_table(n, mode, dict(zip(lengths, cols)), r)


@pytest.fixture
def t1():
    return table1()


ACCEPTANCE_LINES: list[str] = []


def report(line: str) -> None:
    """Record one acceptance line; printed at the end of the run."""
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

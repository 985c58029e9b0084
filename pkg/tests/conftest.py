import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from mvcolor.graph import from_edge_list, is_connected  # noqa: E402

ACCEPTANCE_RESULTS = []


@st.composite
def small_graphs(draw, min_n=1, max_n=8, connected=False):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    g = from_edge_list(n, chosen)
    if connected:
        # chain the components together so the sample stays connected
        extra = [(v - 1, v) for v in range(1, n)] if not is_connected(g) else []
        g = from_edge_list(n, list(chosen) + extra)
    return g


@pytest.fixture
def record_acceptance():
    def record(label, passed, detail=""):
        ACCEPTANCE_RESULTS.append((label, passed, detail))

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label, passed, detail in ACCEPTANCE_RESULTS:
        mark = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{mark}] {label}" + (f" -- {detail}" if detail else ""))

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from bitarm.bitmatrix import BitMatrix

settings.register_profile("default", max_examples=100, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# A=0, B=1, C=2; transactions AB, ABC, AC, BC, AB
FIVE = [{0, 1}, {0, 1, 2}, {0, 2}, {1, 2}, {0, 1}]


@pytest.fixture
def five():
    return BitMatrix.from_transactions(FIVE, 3, col_ids=["A", "B", "C"])


@st.composite
def bool_matrices(draw, max_rows=30, max_items=12):
    n_rows = draw(st.integers(1, max_rows))
    n_items = draw(st.integers(1, max_items))
    density = draw(st.floats(0.1, 0.9))
    seed = draw(st.integers(0, 2**32 - 1))
    rng = np.random.default_rng(seed)
    return rng.random((n_rows, n_items)) < density


def random_matrix(rng, max_rows=30, max_items=12):
    n_rows = int(rng.integers(1, max_rows + 1))
    n_items = int(rng.integers(1, max_items + 1))
    density = float(rng.uniform(0.1, 0.9))
    return rng.random((n_rows, n_items)) < density


_ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance_report():
    def report(label, passed, detail=""):
        line = f"[{'PASS' if passed else 'FAIL'}] {label}" + (f": {detail}" if detail else "")
        _ACCEPTANCE_LINES.append(line)
        print(line)
    return report


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

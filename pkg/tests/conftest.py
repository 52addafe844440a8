import numpy as np
import pytest
from hypothesis import strategies as st

from groupsquares import kernels
from groupsquares.perm import Permutation

_ACCEPTANCE: list[str] = []


@pytest.fixture
def acceptance():
    """Record one PASS/FAIL line per acceptance criterion, printed after the run."""

    def record(label: str, ok: bool, detail: str = "") -> bool:
        line = f"[{'PASS' if ok else 'FAIL'}] {label}" + (f": {detail}" if detail else "")
        _ACCEPTANCE.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)


def permutations_of(degree: int) -> list[Permutation]:
    return [Permutation(r) for r in kernels.all_permutations(degree).tolist()]


def encode(rows: np.ndarray) -> np.ndarray:
    """Pack permutation rows of degree <= 12 into int64 keys (base 16)."""
    rows = np.asarray(rows, dtype=np.int64)
    weights = 16 ** np.arange(rows.shape[1], dtype=np.int64)
    return rows @ weights


@st.composite
def perms(draw, min_degree=1, max_degree=12):
    n = draw(st.integers(min_degree, max_degree))
    return Permutation(draw(st.permutations(range(n))))


@st.composite
def perm_pairs(draw, degree):
    a = draw(st.permutations(range(degree)))
    b = draw(st.permutations(range(degree)))
    return Permutation(a), Permutation(b)

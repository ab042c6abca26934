import numpy as np
import pytest
from hypothesis import settings

from nilcommute.exactla import PrimeField
from nilcommute.partitions import Partition

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def field():
    return PrimeField()


def brute_partitions(n):
    """All partitions of n via the 2^(n-1) compositions, deduplicated."""
    if n == 0:
        return {Partition(())}
    out = set()
    for mask in range(1 << (n - 1)):
        parts, cur = [], 1
        for k in range(n - 1):
            if mask >> k & 1:
                parts.append(cur)
                cur = 1
            else:
                cur += 1
        parts.append(cur)
        out.add(Partition(parts))
    return out


def ferrers_cells(P):
    return [(r, c) for r, x in enumerate(P) for c in range(x)]


def float_rank(a):
    """Floating-point rank; exact for the small 0/1 matrices it is used on."""
    a = np.asarray(a, dtype=float)
    return 0 if a.size == 0 else int(np.linalg.matrix_rank(a))


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

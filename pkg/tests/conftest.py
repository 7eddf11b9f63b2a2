import numpy as np
import pytest

W = np.exp(2j * np.pi / 3)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def kets(spec):
    """Parse '123' style ket labels into assignment tuples."""
    return tuple(int(c) for c in spec)


def pytest_terminal_summary(terminalreporter):
    module = __import__("sys").modules.get("test_acceptance")
    if module and module.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in module.RESULTS:
            terminalreporter.write_line(line)

import numpy as np
import pytest


def random_spd(rng, d, cond=100.0):
    """Random SPD matrix with eigenvalues log-spaced up to the given condition."""
    q, _ = np.linalg.qr(rng.normal(size=(d, d)))
    w = np.geomspace(1.0, cond, d)
    return (q * w) @ q.T


def random_orthogonal(rng, d):
    q, _ = np.linalg.qr(rng.normal(size=(d, d)))
    return q


def rel_err(a, b):
    denom = np.linalg.norm(b)
    if denom == 0.0:
        return np.linalg.norm(a - b)
    return np.linalg.norm(a - b) / denom


# One line per acceptance criterion, printed after the run so the verdicts
# survive pytest's output capture.
ACCEPTANCE_RESULTS: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_RESULTS:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20240901)

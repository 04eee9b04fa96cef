import numpy as np
import pytest

from nidimer.model import PAPER_PARAMS, ModelParams


@pytest.fixture
def params():
    return PAPER_PARAMS


@pytest.fixture
def physical_params():
    from nidimer.model import MU_B_OVER_KB
    return ModelParams(field_unit=MU_B_OVER_KB)


@pytest.fixture
def rng():
    return np.random.default_rng(20261015)


def random_density_matrix(rng, dim=6, rank=None):
    rank = rank or dim
    g = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_unitary(rng, dim):
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


ACCEPTANCE_LINES = []


def report(criterion, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] {criterion}: {detail}"
    ACCEPTANCE_LINES.append(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

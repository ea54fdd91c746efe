import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from funkhilbert.convex import disc, simplex, square

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def sq():
    return square()


@pytest.fixture
def tri():
    return simplex(2)


@pytest.fixture
def unit_disc():
    return disc()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def facet_index(body, normal):
    """Index of the facet with the given outer normal direction."""
    n = np.asarray(normal, dtype=float)
    n = n / np.linalg.norm(n)
    return int(np.argmin(np.linalg.norm(body.normals - n, axis=1)))


_ACCEPTANCE: dict[str, tuple[bool, str]] = {}


@pytest.fixture
def criterion(request):
    """Record one pass/fail line per acceptance criterion.

    Call ``criterion(label, passed, detail)`` inside the test; the lines are
    printed in the terminal summary in the order the tests ran.
    """
    def record(label: str, passed: bool, detail: str = "") -> bool:
        _ACCEPTANCE[label] = (bool(passed), detail)
        return bool(passed)
    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, (ok, detail) in _ACCEPTANCE.items():
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}  {detail}")

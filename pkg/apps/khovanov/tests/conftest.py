"""
Pytest configuration for the Khovanov engine tests.
Sets env vars before any engine imports and provides shared diagrams.
"""
import os

import pytest

# Set before any engine imports so config reads test values
os.environ.setdefault("KHOVANOV_CUBE_LIMIT", "24")
os.environ.setdefault("KHOVANOV_WORKERS", "1")
# Complexes built in fast tests also verify d∘d = 0
os.environ.setdefault("KHOVANOV_DEBUG_CHECKS", "true")
# No OTLP export from tests
os.environ.pop("OTEL_EXPORTER_OTLP_ENDPOINT", None)

from apps.khovanov.homology.khovanov import khovanov_homology  # noqa: E402
from apps.khovanov.knots.braids import from_braid, torus_braid  # noqa: E402
from apps.khovanov.knots.diagram import parse_pd  # noqa: E402


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: brute-force runs on diagrams with 12 or more crossings")


@pytest.fixture(autouse=True)
def _no_debug_checks_when_slow(request, monkeypatch):
    """d∘d = 0 is covered on small complexes; slow runs skip the product."""
    if request.node.get_closest_marker("slow"):
        monkeypatch.setenv("KHOVANOV_DEBUG_CHECKS", "false")


@pytest.fixture(scope="session")
def engine_torus():
    """Brute-force Kh(T(3, q)), each q computed at most once per session."""
    cache = {}

    def table(q):
        if q not in cache:
            cache[q] = khovanov_homology(from_braid(torus_braid(q)))
        return cache[q]

    return table


@pytest.fixture
def unknot():
    return parse_pd("O 1")


@pytest.fixture
def unlink2():
    return parse_pd("O 1\nO 2")


@pytest.fixture
def trefoil():
    """4-crossing negative T(3,2) braid closure."""
    return from_braid(torus_braid(2))


@pytest.fixture
def t33():
    return from_braid(torus_braid(3))


@pytest.fixture
def hopf():
    return parse_pd("X 1 4 2 3\nX 3 2 4 1")

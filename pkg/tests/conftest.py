import pytest

from mfboundary.arrangement import catalog, maclane
from mfboundary.plumbing import boundary_manifold

ACCEPTANCE_LINES = []

CORE_SPECS = {
    "generic8": ("generic", 8),
    "pencil8": ("pencil", 8),
    "near_pencil8": ("near_pencil", 8),
}


def core_configs():
    """The corpus configurations used across the suite, keyed by name."""
    out = {k: catalog(*v) for k, v in CORE_SPECS.items()}
    out["maclane"] = maclane()
    wc = lambda *fl: catalog("with_concurrencies", 8, fl)
    out["triple1"] = wc((1, 2, 3))
    out["triple2"] = wc((1, 2, 3), (4, 5, 6))
    out["triple3"] = wc((1, 2, 3), (4, 5, 6), (1, 4, 7))
    out["sextuple"] = wc(range(1, 7))
    out["sextuple_triple"] = wc(range(1, 7), (1, 7, 8))
    out["quadruple"] = wc((1, 2, 3, 4))
    return out


@pytest.fixture(scope="session")
def configs():
    return core_configs()


_BOUNDARY_CACHE = {}


@pytest.fixture(scope="session")
def boundary():
    def get(config):
        if config not in _BOUNDARY_CACHE:
            _BOUNDARY_CACHE[config] = boundary_manifold(config)
        return _BOUNDARY_CACHE[config]
    return get


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

import pytest

from planeswitch import build


@pytest.fixture(scope="session")
def boards():
    cache = {}

    def get(kind, q=None, d=2, n=None):
        key = (kind, q, d, n)
        if key not in cache:
            cache[key] = build(kind, q, d, n)
        return cache[key]

    return get


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)

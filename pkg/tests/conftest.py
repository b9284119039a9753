import pytest

from qcluster import catalog
from qcluster.seeds import MutationCache
from qcluster.xgraph import enumerate_graph

# lines collected by test_acceptance.py, echoed in the terminal summary
ACCEPTANCE_LINES: list = []


@pytest.fixture(scope="session")
def graphs():
    """Complete exchange graphs shared across modules, built on first use."""
    memo = {}

    def get(name):
        if name not in memo:
            entry = catalog.load(name)
            cache = MutationCache(entry.seed.frame)
            memo[name] = (entry, enumerate_graph(entry.seed, cache=cache), cache)
        return memo[name]

    return get


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda l: int(l.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)

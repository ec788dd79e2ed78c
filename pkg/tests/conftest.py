"""Shared fixtures and the acceptance summary printed at the end of a run."""

import pytest

from hyperhomophily import TwoClassHypergraph

# lines appended by tests/test_acceptance.py, echoed in the terminal summary
ACCEPTANCE_LINES: list = []


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES


@pytest.fixture
def example_h():
    """A = {a1,a2,a3}, B = {b1,b2}; edges a1a2a3, a1a2b1, a1b1b2."""
    nodes = {"a1": "A", "a2": "A", "a3": "A", "b1": "B", "b2": "B"}
    return TwoClassHypergraph(nodes, [("a1", "a2", "a3"), ("a1", "a2", "b1"), ("a1", "b1", "b2")], 3)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

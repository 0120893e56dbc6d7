from functools import lru_cache

import pytest

from hecketl.checks import build_context


@lru_cache(maxsize=None)
def context(spec: str):
    """One shared algebra context per graph for the whole session."""
    return build_context(spec)


@pytest.fixture
def ctx_of():
    return context


_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_log():
    return _ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

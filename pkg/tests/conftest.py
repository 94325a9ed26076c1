from functools import lru_cache

import pytest
from hypothesis import settings

from cyclosrg.ffield import build_field

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

ACCEPTANCE_RESULTS: list[tuple[str, bool, str]] = []


@lru_cache(maxsize=None)
def field(p, f):
    return build_field(p, f)


@pytest.fixture
def F243():
    return field(3, 5)


@pytest.fixture
def F9():
    return field(3, 2)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")

from functools import lru_cache

import pytest

from chordinv.killing import casimir_theta
from chordinv.lie_algebra import build_classical, direct_sum

_ACCEPTANCE_LINES: list[str] = []


@lru_cache(maxsize=None)
def algebra(name: str):
    """Corpus algebras by short name, e.g. "sl3", "so5", "sl2+sl2"."""
    if "+" in name:
        a, b = name.split("+")
        return direct_sum(algebra(a), algebra(b))
    return build_classical(name[:2], int(name[2:]))


@lru_cache(maxsize=None)
def killing(name: str):
    return casimir_theta(algebra(name))


@pytest.fixture(scope="session")
def sl2():
    return algebra("sl2")


@pytest.fixture(scope="session")
def sl3():
    return algebra("sl3")


def record_acceptance(line: str) -> None:
    _ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

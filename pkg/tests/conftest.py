from contextlib import contextmanager
from pathlib import Path

import pytest

from glmgraph.graph import load

CORPUS = Path(__file__).parent / "corpus"
VALID = sorted(p for p in CORPUS.glob("*.json") if p.stem != "malformed")

_acceptance = {}


@contextmanager
def _criterion(number, title):
    """Record PASS when the block completes, FAIL when it raises."""
    _acceptance[number] = (False, title)
    yield
    _acceptance[number] = (True, title)


@pytest.fixture
def criterion():
    return _criterion


@pytest.fixture(scope="session")
def corpus():
    return {p.stem: load(p) for p in VALID}


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_acceptance):
        ok, title = _acceptance[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'}  {title}")

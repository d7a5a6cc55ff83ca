import os
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[1]
MODELS = ROOT / "models"
GOLDEN = Path(__file__).resolve().parent / "golden"


@pytest.fixture
def models_dir():
    return MODELS


@pytest.fixture(autouse=True)
def _default_guard(monkeypatch):
    # tests assume the documented default search cap
    monkeypatch.delenv("REFCALC_GUARD_MAX", raising=False)
    yield


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.LINES:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.LINES:
            terminalreporter.write_line(line)

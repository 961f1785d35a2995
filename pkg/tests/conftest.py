from __future__ import annotations

import random

import pytest

RESULTS: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def criterion():
    """Record one PASS/FAIL line per acceptance criterion."""

    def record(number: int, ok: bool, detail: str = ""):
        RESULTS[number] = (ok, detail)
        print(f"criterion {number}: {'PASS' if ok else 'FAIL'} {detail}")
        assert ok, detail

    return record


def pytest_terminal_summary(terminalreporter):
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        ok, detail = RESULTS[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")

import functools

import pytest

from cauchy_well import assemble
from cauchy_well.pipeline import solve_spectrum


@functools.lru_cache(maxsize=None)
def _block(parity, n):
    return assemble(parity, n)


@functools.lru_cache(maxsize=None)
def _solved(size, levels, parity="both", vectors=False):
    return solve_spectrum(size, levels, parity, vectors=vectors)


@pytest.fixture(scope="session")
def block():
    """``block(parity, n)``: cached closed-form Galerkin block."""
    return _block


@pytest.fixture(scope="session")
def solved():
    """``solved(size, levels, parity="both", vectors=False)``: cached pipeline result."""
    return _solved


ACCEPTANCE = {}


@pytest.fixture
def criterion():
    """``criterion(key, ok, detail)`` records one acceptance line for the terminal summary."""

    def record(key, ok, detail):
        ACCEPTANCE[key] = (bool(ok), detail)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: (int(str(k).split("-")[0]), str(k))):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'}  {detail}")

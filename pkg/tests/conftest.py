import re

import pytest

from tnkit.catalog import load_catalog
from tnkit.checks import Context, run_suite

# criterion number -> list of (part name, passed) filled in by test_acceptance
ACCEPTANCE = {}

_RESULTS = {}


@pytest.fixture(scope="session")
def catalog():
    return load_catalog()


@pytest.fixture(scope="session")
def ctx(catalog):
    return Context(catalog)


@pytest.fixture(scope="session")
def run_check(ctx):
    """Run one expanded check id once per session and return its record."""

    def run(full_id):
        if full_id not in _RESULTS:
            rep = run_suite(ctx, "^" + re.escape(full_id) + "$")
            assert len(rep["checks"]) == 1, full_id
            _RESULTS[full_id] = rep["checks"][0]
        return _RESULTS[full_id]

    return run


@pytest.fixture(scope="session")
def acceptance_log():
    return ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        parts = ACCEPTANCE[k]
        ok = all(p for _, p in parts)
        names = ", ".join(n for n, _ in parts)
        terminalreporter.write_line(f"criterion {k:2}: {'PASS' if ok else 'FAIL'}  ({names})")

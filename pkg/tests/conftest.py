import os
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

DATA = Path(__file__).parent / "data"


@pytest.fixture
def data_dir():
    return DATA


ACCEPTANCE = []


@pytest.fixture
def record_criterion():
    """Store one result line per acceptance criterion for the terminal summary."""

    def record(number, name, ok, seconds, note=""):
        line = f"criterion {number} {name}: {'PASS' if ok else 'FAIL'} ({seconds:.2f}s)"
        ACCEPTANCE.append(line + (f" {note}" if note else ""))
        print(ACCEPTANCE[-1])

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)

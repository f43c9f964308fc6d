import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default", max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile(
    "quick", max_examples=30, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile(
    "thorough", max_examples=1000, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# criterion number -> list of (clause, passed, detail)
ACCEPTANCE: dict = {}

TITLES = {
    1: "worked examples",
    2: "oracle equivalence",
    3: "ACI and fold laws",
    4: "truncation necessity",
    5: "subject reduction and progress",
    6: "complexity counters",
    7: "CLI contract",
}


@pytest.fixture
def criterion():
    def record(number: int, clause: str, passed: bool, detail: str = ""):
        ACCEPTANCE.setdefault(number, []).append((clause, bool(passed), detail))
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        clauses = ACCEPTANCE[n]
        ok = all(p for _, p, _ in clauses)
        detail = "; ".join(
            f"{c}: {'ok' if p else 'FAILED'}{' (' + d + ')' if d else ''}" for c, p, d in clauses
        )
        terminalreporter.write_line(f"criterion {n} [{'PASS' if ok else 'FAIL'}] {TITLES[n]}: {detail}")

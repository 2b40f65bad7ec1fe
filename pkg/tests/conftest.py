from collections import OrderedDict
from pathlib import Path

import pytest

DATA = Path(__file__).parent / "data"
REPO_DATA = Path(__file__).parent.parent / "data"

# criterion id -> list of (check name, ok, detail); filled by test_acceptance
ACCEPTANCE = OrderedDict()


@pytest.fixture
def record():
    def _record(criterion, check, ok, detail=""):
        ACCEPTANCE.setdefault(criterion, []).append((check, bool(ok), detail))
        return ok
    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for crit, checks in ACCEPTANCE.items():
        status = "PASS" if all(ok for _, ok, _ in checks) else "FAIL"
        tr.write_line(f"[{status}] {crit}")
        for name, ok, detail in checks:
            tr.write_line(f"        {'ok ' if ok else 'BAD'} {name}" + (f": {detail}" if detail else ""))

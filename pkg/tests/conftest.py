import time

import pytest

_RESULTS = []


class Criterion:
    """Records one acceptance criterion so the run ends with a pass/fail table."""

    def __init__(self, number, title, budget=None):
        self.number, self.title, self.budget = number, title, budget
        self.detail = ""
        self.start = time.perf_counter()

    def finish(self, passed, detail=""):
        elapsed = time.perf_counter() - self.start
        over = self.budget is not None and elapsed > self.budget
        ok = passed and not over
        note = detail + (f"; over budget {self.budget:.0f}s" if over else "")
        _RESULTS.append((self.number, ok, self.title, note, elapsed))
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {self.number}: {self.title} ({elapsed:.2f}s) {note}"
        print(line)
        return ok

    def record(self, detail):
        """Log a non-binding criterion without judging it."""
        elapsed = time.perf_counter() - self.start
        _RESULTS.append((self.number, None, self.title, detail, elapsed))
        print(f"[RECORDED] criterion {self.number}: {self.title} ({elapsed:.2f}s) {detail}")


@pytest.fixture
def criterion():
    return Criterion


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, ok, title, note, elapsed in sorted(_RESULTS, key=lambda r: r[0]):
        label = "RECORDED" if ok is None else ("PASS" if ok else "FAIL")
        terminalreporter.write_line(f"[{label}] criterion {number}: {title} ({elapsed:.2f}s) {note}")

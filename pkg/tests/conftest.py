import time
from contextlib import contextmanager
from dataclasses import dataclass

import pytest


@dataclass
class CriterionResult:
    number: int
    title: str
    limit: float
    elapsed: float
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f"  {self.detail}" if self.detail else ""
        return f"criterion {self.number}: {status}  {self.title}  ({self.elapsed:.2f}s / limit {self.limit:g}s){extra}"


RESULTS: list[CriterionResult] = []


@contextmanager
def _criterion(number, title, limit):
    """Time the block, record one pass/fail line, and fail when the limit is exceeded."""
    start = time.perf_counter()
    try:
        yield
    except BaseException as exc:
        res = CriterionResult(number, title, limit, time.perf_counter() - start, False, type(exc).__name__)
        RESULTS.append(res)
        print(res.line())
        raise
    elapsed = time.perf_counter() - start
    ok = elapsed <= limit
    res = CriterionResult(number, title, limit, elapsed, ok, "" if ok else "time limit exceeded")
    RESULTS.append(res)
    print(res.line())
    assert ok, res.line()


@pytest.fixture
def criterion():
    return _criterion


def pytest_terminal_summary(terminalreporter):
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for res in sorted(RESULTS, key=lambda r: r.number):
        terminalreporter.write_line(res.line())

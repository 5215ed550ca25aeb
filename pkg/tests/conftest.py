import time
from contextlib import contextmanager

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "repo",
    derandomize=True,
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")

_CRITERIA: list[str] = []


@pytest.fixture
def criterion():
    """Context manager that times a criterion and records one pass/fail line."""

    @contextmanager
    def run(number: int, name: str, limit: float | None = None):
        start = time.perf_counter()
        status, note = "FAIL", ""
        try:
            yield
            elapsed = time.perf_counter() - start
            if limit is not None and elapsed > limit:
                note = f"took {elapsed:.1f}s, limit {limit:.0f}s"
                raise AssertionError(note)
            status = "PASS"
        except BaseException as exc:
            note = note or f"{type(exc).__name__}: {str(exc).splitlines()[0] if str(exc) else ''}"
            raise
        finally:
            elapsed = time.perf_counter() - start
            line = f"criterion {number} [{status}] {name} ({elapsed:.2f}s)"
            if note:
                line += f" -- {note}"
            _CRITERIA.append(line)

    return run


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_CRITERIA, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)

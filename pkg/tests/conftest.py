from __future__ import annotations

import subprocess
import sys

import pytest
from hypothesis import settings

# numba compiles kernels on first call
settings.register_profile("tensorgen", deadline=None)
settings.load_profile("tensorgen")

_CRITERIA: list[tuple[str, str, str]] = []


@pytest.fixture
def run_cli():
    def run(*args: str) -> subprocess.CompletedProcess:
        return subprocess.run([sys.executable, "-m", "tensorgen", *args], capture_output=True, text=True,
                              check=False, timeout=600)
    return run


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    marker = dict(report.user_properties).get("criterion")
    if marker is None:
        return
    status = "PASS" if report.outcome == "passed" else "FAIL"
    _CRITERIA.append((marker, status, f"{report.duration:.1f}s"))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name, status, took in sorted(_CRITERIA):
        terminalreporter.write_line(f"{status}  {name}  ({took})")

import mpmath as mp
import pytest

mp.mp.dps = 30

ACCEPTANCE_LINES = []


def mp_k(nu, z):
    return complex(mp.besselk(nu, z))


def mp_i(nu, z):
    return complex(mp.besseli(nu, z))


@pytest.fixture
def report_line():
    """Record one PASS/FAIL line for the acceptance summary."""

    def record(label, ok, detail):
        line = f"[{'PASS' if ok else 'FAIL'}] {label}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

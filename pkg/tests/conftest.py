import os

import pytest

os.environ.pop("HOMTRACE_BUDGET", None)


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running enumeration")


@pytest.fixture(scope="session")
def f9():
    from homtrace.field import build_field

    return build_field(3, 2)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import pytest_terminal_summary_lines
    except ImportError:
        return
    lines = pytest_terminal_summary_lines()
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)

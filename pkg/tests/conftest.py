import os

os.environ.setdefault("INSTANTIA_AUDIT", "1")

import pytest  # noqa: E402
from hypothesis import HealthCheck, settings  # noqa: E402

import report  # noqa: E402

settings.register_profile(
    "default",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much, HealthCheck.data_too_large],
)
settings.load_profile("default")


@pytest.fixture
def clauses():
    from instantia.tptp import parse_clauses

    return parse_clauses


def pytest_terminal_summary(terminalreporter):
    if report.LINES:
        terminalreporter.section("acceptance criteria")
        for line in report.LINES:
            terminalreporter.write_line(line)

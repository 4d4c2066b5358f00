import pytest

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def report():
    """Record one pass/fail line per acceptance criterion."""

    def _report(tag, passed, detail):
        line = f"{'PASS' if passed else 'FAIL'}  {tag}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return passed

    return _report

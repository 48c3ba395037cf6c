"""Shared test plumbing: the acceptance-criteria report block."""

_criterion_lines = []


def record_criterion(line: str):
    _criterion_lines.append(line)


def pytest_terminal_summary(terminalreporter):
    if _criterion_lines:
        terminalreporter.section("acceptance criteria")
        for line in _criterion_lines:
            terminalreporter.write_line(line)

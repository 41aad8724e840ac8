from support import ACCEPTANCE_LOG


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LOG:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_LOG):
        status, description = ACCEPTANCE_LOG[number]
        terminalreporter.write_line(f"criterion {number:>2}: {status}  {description}")

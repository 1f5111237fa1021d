import _util


def pytest_terminal_summary(terminalreporter):
    if not _util.ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_util.ACCEPTANCE):
        terminalreporter.write_line(_util.ACCEPTANCE[n])

import pytest

# (number, title, verdict, seconds, detail) appended by the acceptance suite
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num, title, verdict, secs, detail in sorted(ACCEPTANCE):
        line = f"criterion {num}: {verdict}  {title}  ({secs:.1f}s)"
        if detail:
            line += f"  {detail}"
        terminalreporter.write_line(line)


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE

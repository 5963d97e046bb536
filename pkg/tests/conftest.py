import pytest

ACCEPTANCE_LINES = {}


@pytest.fixture
def acceptance_report(request):
    """Record one summary line for an acceptance criterion."""
    key = request.node.name

    def record(ok: bool, text: str):
        ACCEPTANCE_LINES[key] = f"[{'PASS' if ok else 'FAIL'}] {text}"
        print(ACCEPTANCE_LINES[key])

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for key in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[key])

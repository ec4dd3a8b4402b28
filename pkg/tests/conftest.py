import pytest

# (criterion number, title, passed, detail), filled in by test_acceptance
ACCEPTANCE_RESULTS: list[tuple[int, str, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok, detail in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {number}: {title} ({detail})")


@pytest.fixture
def record_acceptance():
    def record(number, title, ok, detail=""):
        line = f"{'PASS' if ok else 'FAIL'}  criterion {number}: {title} ({detail})"
        print(line)
        ACCEPTANCE_RESULTS.append((number, title, bool(ok), detail))
        assert ok, line

    return record

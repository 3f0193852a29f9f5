import pytest

_ACCEPTANCE = pytest.StashKey()


@pytest.fixture
def record_criterion(request):
    """Store a one-line verdict for the terminal summary."""
    lines = request.config.stash.setdefault(_ACCEPTANCE, {})

    def record(number, ok, detail):
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
        lines[number] = line
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE, {})
    if lines:
        terminalreporter.section("acceptance criteria")
        for number in sorted(lines):
            terminalreporter.write_line(lines[number])

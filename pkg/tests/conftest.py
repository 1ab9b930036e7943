import pytest


def pytest_configure(config):
    config.acceptance_lines = {}


@pytest.fixture
def acceptance_report(request):
    """Record one pass/fail line per acceptance criterion."""
    lines = request.config.acceptance_lines

    def report(number: int, ok: bool, detail: str) -> None:
        line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
        lines[number] = line
        print(line)

    return report


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "acceptance_lines", {})
    if lines:
        terminalreporter.section("acceptance criteria")
        for n in sorted(lines):
            terminalreporter.write_line(lines[n])

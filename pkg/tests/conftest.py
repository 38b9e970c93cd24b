import pytest


def pytest_configure(config):
    config.acceptance_lines = []


@pytest.fixture
def record(request):
    """Collect one summary line per acceptance criterion."""
    lines = request.config.acceptance_lines

    def add(number, title, failures, elapsed):
        verdict = "PASS" if not failures else "FAIL"
        line = f"criterion {number}: {verdict}  {title}  ({elapsed:.2f}s)"
        if failures:
            line += "  -- " + "; ".join(failures)
        lines.append((number, line))
        print(line)

    return add


def pytest_terminal_summary(terminalreporter, config):
    lines = getattr(config, "acceptance_lines", [])
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(lines):
        terminalreporter.write_line(line)

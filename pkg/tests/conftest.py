import pytest

_LINES: list[str] = []


@pytest.fixture(scope="session")
def acceptance_log():
    def record(number: int, ok: bool, text: str):
        line = f"[criterion {number:2d}] {'PASS' if ok else 'FAIL'}  {text}"
        _LINES.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_LINES):
            terminalreporter.write_line(line)

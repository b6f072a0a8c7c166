import contextlib

import pytest

_ACCEPTANCE = []


class _Record:
    def __init__(self, number: int, title: str):
        self.number = number
        self.title = title
        self.detail = ""


@pytest.fixture
def acceptance():
    """Context manager recording one PASS/FAIL line per criterion, printed in the summary."""

    @contextlib.contextmanager
    def run(number: int, title: str):
        rec = _Record(number, title)
        passed = False
        try:
            yield rec
            passed = True
        finally:
            line = f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {title}"
            if rec.detail:
                line += f" ({rec.detail})"
            _ACCEPTANCE.append((number, line))

    return run


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(_ACCEPTANCE, key=lambda r: r[0]):
        terminalreporter.write_line(line)

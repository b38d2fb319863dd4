import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("rzgo", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("rzgo")

# one line per acceptance criterion, filled in by test_acceptance.py
CRITERIA_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA_LINES):
        terminalreporter.write_line(CRITERIA_LINES[n])


@pytest.fixture
def rows():
    """Parse a board diagram: X black, O white, '.' empty."""
    from rzgo.board import BLACK, Position

    def make(text, to_move=BLACK):
        return Position.from_rows(text, to_move)
    return make

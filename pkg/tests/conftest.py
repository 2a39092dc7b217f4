import pytest

_RESULTS = {}


class Criterion:
    """Collects the outcome of one acceptance criterion for the summary."""

    def __init__(self, number: int, title: str):
        self.number = number
        self.title = title
        self.detail = ""
        self.passed = False
        _RESULTS[number] = self

    def done(self, detail: str) -> None:
        self.detail = detail
        self.passed = True


@pytest.fixture
def criterion(request):
    marker = request.node.get_closest_marker("criterion")
    number, title = marker.args
    return Criterion(number, title)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        c = _RESULTS[number]
        mark = "PASS" if c.passed else "FAIL"
        line = f"[{mark}] {number:>2}. {c.title}"
        if c.detail:
            line += f": {c.detail}"
        terminalreporter.write_line(line)

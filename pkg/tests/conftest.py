import pytest

from instar_turan import _backend


@pytest.fixture(params=_backend.available())
def backend(request):
    """Run the test once per available kernel backend."""
    prev = _backend.use_backend(request.param)
    yield request.param
    _backend.use_backend(prev)


ACCEPTANCE_LINES = {}


def record_acceptance(number, passed, detail):
    line = f"criterion {number}: {'PASS' if passed else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES[number] = line
    return line


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[number])

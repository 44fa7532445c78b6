import pytest

from fmlattice import all_types, lookup_type


@pytest.fixture(params=all_types(), ids=str)
def surface(request):
    return request.param


@pytest.fixture
def st21():
    return lookup_type("2,1", 0)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import VERDICTS

    if not VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(VERDICTS):
        terminalreporter.write_line(VERDICTS[n])

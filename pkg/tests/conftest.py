import pytest

from hiermod.constellation import make_nonuniform_16qam, make_qam16, make_qpsk
from hiermod.prediction import ReferenceTable

_CRITERIA = []


@pytest.fixture
def report():
    """Record one acceptance line; echoed in the terminal summary."""

    def _report(number, ok, detail):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
        _CRITERIA.append(line)
        print(line)
        return ok

    return _report


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in _CRITERIA:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def qpsk():
    return make_qpsk()


@pytest.fixture(scope="session")
def qam16():
    return make_qam16()


@pytest.fixture(scope="session")
def hier2():
    return make_nonuniform_16qam(2)


@pytest.fixture(scope="session")
def dvbsh_table():
    # QPSK operating points at BER 1e-5 for the two turbo rates of the worked example
    return ReferenceTable("QPSK", "BER", 1e-5, (("2/9", -3.4), ("1/5", -3.9)))

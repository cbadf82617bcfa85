import pytest

from pdmask import pdmc
from pdmask.gf import Field
from pdmask.matfq import MatrixFq

_criteria = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when != "call" and not (rep.when == "setup" and rep.failed):
        return
    num, text = mark.args
    ok = rep.passed
    prev = _criteria.get(num)
    _criteria[num] = (text, ok if prev is None else prev[1] and ok)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        text, ok = _criteria[num]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {text}")


@pytest.fixture(scope="session")
def gf5():
    return Field(5)


@pytest.fixture(scope="session")
def gf7():
    return Field(7)


@pytest.fixture(scope="session")
def c1_host_q5():
    """A [6,4,3]_5 Construction 1 code (G1 = [0 | I_3 | P], plus the all-one row)."""
    S = pdmc.search_construction1(Field(5), 6, 2, 3, seed=0)
    assert S.code.d_known >= 3
    return S


@pytest.fixture(scope="session")
def c1_host_q7():
    """A [15,12,3]_7 Construction 1 code."""
    S = pdmc.search_construction1(Field(7), 15, 3, 3, seed=0)
    assert S.code.d_known >= 3
    return S


@pytest.fixture(scope="session")
def two_block_H(gf5):
    return MatrixFq(gf5, [[1, 1, 1, 1, 1, 1], [0, 0, 1, 1, 1, 1]])

import pytest
from hypothesis import settings

from valuebounds.fields import field_of_order

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

SMALL_QS = [2, 3, 4, 5, 7, 8, 9]


@pytest.fixture(params=SMALL_QS, ids=lambda q: f"q{q}")
def small_field(request):
    return field_of_order(request.param)


_CRITERIA = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or rep.when != "call" and not rep.failed:
        return
    number, title = marker.args
    prev = _CRITERIA.get(number, (True, title, 0.0))
    _CRITERIA[number] = (prev[0] and rep.passed, title, prev[2] + rep.duration)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        ok, title, secs = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {title}  ({secs:.2f}s)")

import pytest

_criteria = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    n = marker.args[0]
    if report.when == "call" or report.failed:
        passed = report.passed and _criteria.get(n, (True,))[0]
        _criteria[n] = (passed, item.name)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        passed, name = _criteria[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if passed else 'FAIL'}  ({name})")

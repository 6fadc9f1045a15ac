import pytest

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): exit criterion, summarised at the end")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None or report.when not in ("setup", "call"):
        return
    number, title = marker.args
    if report.when == "setup" and report.passed:
        return
    ok = report.passed
    detail = ""
    if report.failed:
        detail = str(report.longrepr).strip().splitlines()[-1][:160]
    prev = _CRITERIA.get(number)
    if prev is None or prev[1]:
        _CRITERIA[number] = (title, ok, detail)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, ok, detail = _CRITERIA[number]
        line = f"criterion {number}: {title}: {'PASS' if ok else 'FAIL'}"
        if detail:
            line += f" ({detail})"
        terminalreporter.write_line(line)

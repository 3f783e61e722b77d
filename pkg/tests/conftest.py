import pytest

_OUTCOMES: dict[int, list[tuple[str, str]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number n")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        _OUTCOMES.setdefault(marker.args[0], []).append((item.name, report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _OUTCOMES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_OUTCOMES):
        results = _OUTCOMES[number]
        failed = [name for name, outcome in results if outcome != "passed"]
        status = "FAIL" if failed else "PASS"
        detail = f"{len(results) - len(failed)}/{len(results)} checks passed"
        if failed:
            detail += "; failing: " + ", ".join(failed)
        terminalreporter.write_line(f"criterion {number}: {status} ({detail})")

"""Per-criterion summary for the acceptance suite.

Tests tagged ``@pytest.mark.criterion(k, title)`` get one PASS/FAIL line
each at the end of the run.
"""

from __future__ import annotations

_TAGS: dict[str, tuple[int, str]] = {}
_RESULTS: dict[int, tuple[str, str, float]] = {}


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            _TAGS[item.nodeid] = (mark.args[0], mark.args[1])


def pytest_runtest_logreport(report):
    tag = _TAGS.get(report.nodeid)
    if tag is None:
        return
    number, title = tag
    if report.when == "call" or report.failed or report.skipped:
        status = "PASS" if report.passed else ("SKIP" if report.skipped else "FAIL")
        previous = _RESULTS.get(number)
        if previous is None or previous[0] == "PASS":
            _RESULTS[number] = (status, title, report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        status, title, seconds = _RESULTS[number]
        terminalreporter.write_line(f"criterion {number:2d}: {status}  {title} ({seconds:.1f}s)")
    passed = sum(1 for s, _, _ in _RESULTS.values() if s == "PASS")
    terminalreporter.write_line(f"{passed}/{len(_RESULTS)} criteria pass")

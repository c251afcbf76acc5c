"""Shared pytest configuration.

Tests marked ``@pytest.mark.acceptance("ACn", "description")`` are reported
once more at the end of the run as one PASS/FAIL line per criterion; a
criterion split over several tests passes only if all of them pass.
"""
import pytest

collect_ignore = ["src/hurwitz_lab/__main__.py"]

_ACCEPTANCE: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(tag, description): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    tag, description = marker.args
    if report.when == "call" or (report.when == "setup" and not report.passed):
        entry = _ACCEPTANCE.setdefault(tag, {"description": description, "passed": True,
                                             "tests": 0, "seconds": 0.0})
        entry["passed"] = entry["passed"] and report.passed
        entry["tests"] += 1
        entry["seconds"] += report.duration


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for tag in sorted(_ACCEPTANCE, key=lambda t: int(t[2:])):
        entry = _ACCEPTANCE[tag]
        verdict = "PASS" if entry["passed"] else "FAIL"
        terminalreporter.write_line(
            f"{tag:<5} {verdict}  {entry['description']}  "
            f"[{entry['tests']} test(s), {entry['seconds']:.2f}s]")

import pytest

_outcomes = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion checked by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    num, title = mark.args
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        if hasattr(rep, "wasxfail"):
            status = "FAIL (expected, marked xfail)" if rep.skipped else "PASS (unexpectedly)"
        else:
            status = "PASS" if rep.passed else "FAIL"
        note = rep.capstdout.strip().splitlines()
        _outcomes.setdefault((num, title), []).append((status, note[-1] if note else ""))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for (num, title), statuses in sorted(_outcomes.items()):
        bad = [s for s in statuses if s[0] != "PASS"]
        status, note = bad[0] if bad else statuses[-1]
        terminalreporter.write_line(f"criterion {num} [{title}]: {status}" + (f" ({note})" if note else ""))

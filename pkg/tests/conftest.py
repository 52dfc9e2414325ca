"""Shared pytest setup: per-criterion PASS/FAIL lines for the acceptance suite."""

import pytest

_CRITERIA: dict[int, list[str]] = {}
_NOTES: dict[int, list[str]] = {}
_TITLES: dict[int, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number and title")


def pytest_runtest_logreport(report):
    crit = getattr(report, "criterion", None)
    if crit is None:
        return
    n, title = crit
    _TITLES[n] = title
    outcomes = _CRITERIA.setdefault(n, [])
    if report.when == "call" or report.outcome != "passed":
        if hasattr(report, "wasxfail"):
            outcomes.append("xfail")
            name = report.nodeid.split("::")[-1]
            _NOTES.setdefault(n, []).append(f"{name}: {report.wasxfail}")
        else:
            outcomes.append(report.outcome)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m is not None:
        rep.criterion = (m.args[0], m.args[1])


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        outs = _CRITERIA[n]
        ok = all(o == "passed" for o in outs)
        bad = sum(1 for o in outs if o != "passed")
        note = "" if ok else f" ({bad} of {len(outs)} checks failed or xfailed)"
        tr.write_line(f"criterion {n:2d} {_TITLES[n]}: {'PASS' if ok else 'FAIL'}{note}")
        for line in _NOTES.get(n, []):
            tr.write_line(f"    known: {line}")

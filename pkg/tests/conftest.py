import os
from collections import OrderedDict

import hypothesis
import pytest

hypothesis.settings.register_profile("default", deadline=None, max_examples=60)
hypothesis.settings.register_profile("ci", deadline=None, max_examples=300)
hypothesis.settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

_CRITERIA: "OrderedDict[int, dict]" = OrderedDict()


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by the test")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            n, title = mark.args
            entry = _CRITERIA.setdefault(n, {"title": title, "outcomes": []})
            entry.setdefault("ids", []).append(item.nodeid)
    for n in sorted(_CRITERIA):
        _CRITERIA.move_to_end(n)


def pytest_runtest_logreport(report):
    for entry in _CRITERIA.values():
        if report.nodeid in entry.get("ids", ()) and (report.when == "call" or report.outcome != "passed"):
            entry["outcomes"].append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n, entry in _CRITERIA.items():
        outs = entry["outcomes"]
        if not outs:
            verdict = "NOT RUN"
        elif all(o == "passed" for o in outs):
            verdict = "PASS"
        else:
            verdict = "FAIL"
        terminalreporter.write_line(f"criterion {n:2d}: {verdict:7s} {entry['title']}")


@pytest.fixture(scope="session")
def suite_dir():
    from pathlib import Path

    return Path(__file__).resolve().parents[1] / "algebras" / "suite"


@pytest.fixture(scope="session")
def suite(suite_dir):
    from rees_tau.suites import load_suite

    return load_suite(suite_dir)

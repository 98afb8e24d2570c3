import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ruelle.laurent import make  # noqa: E402
from ruelle.transfer import Filter  # noqa: E402

SQ = 1 / np.sqrt(2)

_criteria: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        num, title = marker.args
        entry = _criteria.setdefault(num, {"title": title, "ok": True, "tests": []})
        entry["ok"] &= rep.passed
        entry["tests"].append((item.name, rep.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for num in sorted(_criteria):
        e = _criteria[num]
        tr.write_line(f"criterion {num:2d} [{'PASS' if e['ok'] else 'FAIL'}] {e['title']}")
        for name, outcome in e["tests"]:
            if outcome != "passed":
                tr.write_line(f"    {name}: {outcome}")


@pytest.fixture
def haar():
    return Filter(make(0, [SQ, SQ]), 2)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)

from __future__ import annotations

import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

from smallqg.datum import Datum  # noqa: E402
from smallqg.groups import AbelianGroup  # noqa: E402


def taft(n: int = 11) -> Datum:
    return Datum(AbelianGroup([n]), [(1,)], [(1,)], [[2]])


def sl2_type() -> Datum:
    return Datum(AbelianGroup([11]), [(1,), (1,)], [(2,), (-2,)], [[2, 0], [0, 2]])


def a2_11() -> Datum:
    return Datum(AbelianGroup([11, 11]), [(1, 0), (0, 1)], [(2, -1), (-1, 2)], [[2, -1], [-1, 2]])


def a2_121() -> Datum:
    return Datum(AbelianGroup([121, 121]), [(1, 0), (0, 1)], [(22, -11), (-11, 22)], [[2, -1], [-1, 2]])


def z121() -> Datum:
    return Datum(AbelianGroup([121]), [(1,)], [(11,)], [[2]])


@pytest.fixture(scope="session")
def data_dir():
    return os.path.join(os.path.dirname(os.path.dirname(__file__)), "demos", "data")


# acceptance reporting: one line per criterion in the terminal summary

_CRITERIA: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number and title")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call" and not rep.failed:
        return
    n, title = mark.args
    ok = rep.passed if rep.when == "call" else False
    prev = _CRITERIA.get(n, (title, True))
    _CRITERIA[n] = (title, prev[1] and ok)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        title, ok = _CRITERIA[n]
        terminalreporter.write_line(f"criterion {n:2d} {'PASS' if ok else 'FAIL'}  {title}")

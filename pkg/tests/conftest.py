import random
from math import gcd

import pytest

from gencollatz.catalog import Section4Params, build_section4_map, build_zsqrt2_map
from gencollatz.mapcore import validate_map
from itertools import product


@pytest.fixture(scope="session")
def zmap():
    return build_zsqrt2_map()


@pytest.fixture(scope="session")
def s4map():
    return build_section4_map(Section4Params(3, 1))


def random_valid_map(rng, d, e, coprime=True, spread=3):
    """A random valid map: m coprime to d (optionally), r = -m w + d v."""
    table = {}
    for w in product(range(d), repeat=e):
        while True:
            m = rng.randint(1, 4 * d)
            if not coprime or gcd(m, d) == 1:
                break
        r = tuple(-m * c + d * rng.randint(-spread, spread) for c in w)
        table[w] = (m, r)
    return validate_map(d, table)


@pytest.fixture
def rng():
    return random.Random(12345)


# one pass/fail line per acceptance criterion

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call":
        return
    n, title = mark.args
    ok = rep.passed
    prev = _criteria.get(n, (title, True))
    _criteria[n] = (title, prev[1] and ok)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        title, ok = _criteria[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {title}")

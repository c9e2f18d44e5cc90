import random
from fractions import Fraction

import pytest

from adsp.classdata import ClassTuple, JordanClass

ACCEPTANCE: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion checked by this test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    report = (yield).get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, title = mark.args
    if report.when == "call" or report.failed:
        status = "PASS" if report.passed else ("SKIP" if report.skipped else "FAIL")
        previous = ACCEPTANCE.get(number, ("PASS", title))[0]
        if previous != "FAIL":
            ACCEPTANCE[number] = (status, title)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE):
            status, title = ACCEPTANCE[number]
            terminalreporter.write_line(f"criterion {number}: {status}  {title}")


def pm_class(a, b):
    return JordanClass.of((a, [1]), (b, [1]))


@pytest.fixture
def triple_2x2():
    c = pm_class(1, -1)
    return ClassTuple((c, c, c))


def random_partition(rng, n):
    parts = []
    while n:
        p = rng.randint(1, n)
        parts.append(p)
        n -= p
    return sorted(parts, reverse=True)


def random_class(rng, n, max_eigs=3, denom=(1, 2, 3)):
    """Random Jordan data of size n with distinct random rational eigenvalues."""
    groups = random_partition(rng, n)[:max_eigs]
    groups[-1] += n - sum(groups)
    values = set()
    while len(values) < len(groups):
        values.add(Fraction(rng.randint(-9, 9), rng.choice(denom)))
    return JordanClass(tuple((v, tuple(random_partition(rng, g))) for v, g in zip(sorted(values), groups)))


def random_tuple(rng, k, n, zero_trace=True, **kw):
    classes = [random_class(rng, n, **kw) for _ in range(k)]
    if zero_trace:
        total = sum(sum(sum(b) * v for v, b in c.spectrum) for c in classes)
        shift = total / n
        last = classes[-1]
        classes[-1] = JordanClass(tuple((v - shift, b) for v, b in last.spectrum))
    return ClassTuple(tuple(classes))


@pytest.fixture
def rng():
    return random.Random(20261016)

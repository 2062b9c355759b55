import random
from collections import defaultdict
from fractions import Fraction

import pytest
from hypothesis import assume, settings, strategies as st

from segguard.bounds import compute_bounds
from segguard.errors import UniformPriceAtTop
from segguard.market import validate_market
from segguard.regulation import validate_database

# fixed example streams keep every run, and test_output.txt, reproducible
settings.register_profile("repro", derandomize=True, deadline=None)
settings.load_profile("repro")

X_STAR = validate_market([1, 2, 3], [Fraction(2, 5), Fraction(1, 2), Fraction(1, 10)])


def db(*masses):
    return validate_database([Fraction(m) for m in masses])


def random_market(rng: random.Random, max_k: int = 4, min_k: int = 2, zero_prob: float = 0.15, thin_top: bool = False):
    """Random market whose uniform price is not the top of the support.

    ``thin_top`` puts little mass on the highest valuation, which makes
    markets with a non-empty F2 far more common.
    """
    while True:
        k = rng.randint(min_k, max_k)
        grid = sorted(rng.sample(range(1, 13), k))
        weights = [0 if rng.random() < zero_prob else rng.randint(1, 9) for _ in range(k)]
        if thin_top:
            grid = list(range(1, k + 1))
            weights = [rng.randint(1, 20) for _ in range(k - 1)] + [rng.randint(1, 3)]
        if sum(weights) == 0:
            continue
        total = sum(weights)
        market = validate_market(grid, [Fraction(w, total) for w in weights])
        try:
            compute_bounds(market)
        except UniformPriceAtTop:
            continue
        return market


def random_database(rng: random.Random, max_n: int = 3):
    n = rng.randint(1, max_n)
    weights = [rng.randint(1, 9) for _ in range(n)]
    total = sum(weights)
    return validate_database([Fraction(w, total) for w in weights])


def corpus(seed: int, count: int, max_k: int = 4, max_n: int = 3):
    """Seeded (market, database) pairs; every third market has a thin top."""
    rng = random.Random(seed)
    return [(random_market(rng, max_k, thin_top=i % 3 == 2), random_database(rng, max_n)) for i in range(count)]


@st.composite
def markets(draw, max_k: int = 5, require_bounds: bool = True, thin_top: bool = False):
    k = draw(st.integers(2, max_k))
    if thin_top:
        grid = list(range(1, k + 1))
        weights = draw(st.lists(st.integers(1, 20), min_size=k - 1, max_size=k - 1)) + [draw(st.integers(1, 3))]
    else:
        grid = sorted(draw(st.sets(st.integers(1, 20), min_size=k, max_size=k)))
        weights = draw(st.lists(st.integers(0, 9), min_size=k, max_size=k).filter(lambda w: sum(w) > 0))
    total = sum(weights)
    market = validate_market(grid, [Fraction(w, total) for w in weights])
    if require_bounds:
        try:
            compute_bounds(market)
        except UniformPriceAtTop:
            assume(False)
    return market


@st.composite
def databases(draw, max_n: int = 3):
    n = draw(st.integers(1, max_n))
    weights = draw(st.lists(st.integers(1, 9), min_size=n, max_size=n))
    total = sum(weights)
    return validate_database([Fraction(w, total) for w in weights])


# acceptance summary: one line per criterion, aggregated over its tests

_acceptance = defaultdict(list)


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    name = report.nodeid.split("::")[-1]
    if "test_acceptance.py" in report.nodeid and name.startswith("test_a"):
        crit = "A" + name[len("test_a"):].split("_")[0]
        _acceptance[crit].append((name, report.passed))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(_acceptance, key=lambda c: int(c[1:])):
        results = _acceptance[crit]
        ok = all(p for _, p in results)
        failed = [n for n, p in results if not p]
        detail = f"{len(results)} checks" + (f"; failed: {', '.join(failed)}" if failed else "")
        terminalreporter.write_line(f"{crit}: {'PASS' if ok else 'FAIL'} ({detail})")


@pytest.fixture
def x_star():
    return X_STAR

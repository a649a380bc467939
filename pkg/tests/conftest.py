import random
from itertools import combinations

import pytest

from almostint.constructions import b_plus
from almostint.fuzz import random_almost_intersecting
from almostint.family import SetFamily


def c4_2(n=4):
    """All 2-subsets of [4], viewed inside [n]."""
    return SetFamily.from_sets(n, 2, combinations(range(1, 5), 2))


def almost_intersecting_corpus(count=300, seed=7):
    """Named extremal families plus seeded random ones over small (n, k)."""
    fams = [c4_2(4), c4_2(6), b_plus(8, 3), b_plus(10, 4), b_plus(13, 3), b_plus(11, 5)]
    rng = random.Random(seed)
    shapes = [(4, 2), (6, 2), (7, 3), (9, 3), (10, 4), (12, 3)]
    for i in range(count):
        n, k = shapes[i % len(shapes)]
        fams.append(random_almost_intersecting(rng, n, k))
    return fams


@pytest.fixture(scope="session")
def corpus():
    return almost_intersecting_corpus()


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

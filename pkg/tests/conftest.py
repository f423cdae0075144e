import random
import sys

import pytest
from hypothesis import settings, strategies as st

from pilekit.batteries import random_pile
from pilekit.catalog import by_name, catalog, cyclic
from pilekit.groups import validate_group
from pilekit.gset import GSet

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


@pytest.fixture
def c2():
    return validate_group([[0, 1], [1, 0]])


@pytest.fixture
def c4():
    return cyclic(4)


@pytest.fixture
def d8():
    return by_name("D8")


def swap_action(g, n, pairs):
    """Element 1 of C2 swaps each pair, everything else fixed."""
    rows = []
    for t in range(n):
        img = t
        for a, b in pairs:
            if t == a:
                img = b
            elif t == b:
                img = a
        rows.append([t, img])
    return GSet(g, rows)


small = [g for g in catalog("p3") if g.order <= 8]
seeds = st.integers(min_value=0, max_value=2**31 - 1)


def pile_from_seed(seed, max_space=5):
    return random_pile(random.Random(seed), small, max_space)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.LINES:
        terminalreporter.write_line(line)

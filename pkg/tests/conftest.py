import itertools
import random

import pytest
from hypothesis import strategies as st

from eulercat import FIXTURES, load_fixture
from eulercat.generate import random_category, random_poset


@pytest.fixture(scope="session")
def fixtures():
    return {name: load_fixture(name) for name in FIXTURES}


@pytest.fixture(params=FIXTURES)
def fixture_cat(request):
    return load_fixture(request.param)


@st.composite
def small_categories(draw, max_objects=3):
    """Random posets with adjoined parallel arrows and idempotents."""
    seed = draw(st.integers(0, 10**6))
    n = draw(st.integers(1, max_objects))
    parallel = draw(st.integers(0, 2))
    idempotents = draw(st.integers(0, 1))
    return random_category(n, random.Random(seed), parallel=parallel, idempotents=idempotents)


@st.composite
def small_posets(draw, max_size=4):
    return random_poset(draw(st.integers(1, max_size)), draw(st.integers(0, 10**6)))


def brute_force_chains(cat, n):
    """All n-tuples of non-identity morphisms that compose, by exhaustive product."""
    if n == 0:
        return [(x,) for x in cat.objects]
    nonid = [m for m in cat.morphisms if not cat.is_identity(m)]
    out = []
    for t in itertools.product(nonid, repeat=n):
        if all(cat.target(t[i]) == cat.source(t[i + 1]) for i in range(n - 1)):
            out.append(t)
    return out


ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance():
    """Record one summary line per acceptance criterion."""

    def record(number, title, passed, detail=""):
        status = "PASS" if passed else "FAIL"
        ACCEPTANCE_LINES.append(f"[{status}] criterion {number}: {title}" + (f" ({detail})" if detail else ""))

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)

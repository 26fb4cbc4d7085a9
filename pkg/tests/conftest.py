import random
import sys
from collections import OrderedDict
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from cliffordkit import GaussianRational, Multivector, QuadraticSpace  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

SIGNATURES = {
    "euclidean": QuadraticSpace.euclidean(4),
    "lorentzian": QuadraticSpace.lorentzian(4),
    "split": QuadraticSpace.split(2, 2),
    "degenerate": QuadraticSpace((1, 0, -1, 2)),
}


# -- hypothesis strategies ----------------------------------------------------

rationals = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
gaussians = st.builds(GaussianRational, rationals, rationals)
scalars = st.one_of(rationals, gaussians)


@st.composite
def spaces(draw, min_n=1, max_n=5, degenerate=True):
    n = draw(st.integers(min_n, max_n))
    values = [-2, -1, 1, 2, Fraction(1, 2)] + ([0] if degenerate else [])
    return QuadraticSpace(tuple(draw(st.sampled_from(values)) for _ in range(n)))


@st.composite
def multivectors(draw, space, coeffs=rationals, max_terms=6, parity=None):
    masks = list(range(1 << space.n))
    if parity is not None:
        masks = [m for m in masks if (-1) ** bin(m).count("1") == parity]
    picked = draw(st.lists(st.sampled_from(masks), max_size=max_terms))
    return Multivector(space, {m: draw(coeffs) for m in picked})


@st.composite
def vectors(draw, space, coeffs=rationals):
    return Multivector.vector(space, [draw(coeffs) for _ in range(space.n)])


@pytest.fixture
def rng():
    return random.Random(20240917)


# -- acceptance summary ---------------------------------------------------------

_CRITERIA = OrderedDict()


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if not name.startswith("test_c"):
        return
    key = int(name[6:8])
    ok = report.passed if report.when == "call" else not report.failed
    _CRITERIA[key] = _CRITERIA.get(key, True) and ok


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    from test_acceptance import TITLES

    terminalreporter.section("acceptance criteria")
    for key in sorted(TITLES):
        if key not in _CRITERIA:
            status = "NOT RUN"
        else:
            status = "PASS" if _CRITERIA[key] else "FAIL"
        terminalreporter.write_line(f"{status} criterion {key:2d}: {TITLES[key]}")

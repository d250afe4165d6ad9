import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from toricding import AffineFn, HPolytope, PLConcave, validate_fano

REPO = Path(__file__).resolve().parent.parent
POLYTOPE_DIR = REPO / "polytopes"


def make_p1():
    return validate_fano(HPolytope.from_inequalities(1, [([1], 1), ([-1], 1)]))


def make_p2():
    return validate_fano(
        HPolytope.from_inequalities(2, [([-1, 0], 1), ([0, -1], 1), ([1, 1], 1)])
    )


def make_bl1p2():
    return validate_fano(
        HPolytope.from_inequalities(
            2, [([1, 0], 1), ([0, 1], 1), ([-1, -1], 1), ([1, 1], 1)]
        )
    )


def make_p1xp1():
    return validate_fano(
        HPolytope.from_inequalities(
            2, [([1, 0], 1), ([-1, 0], 1), ([0, 1], 1), ([0, -1], 1)]
        )
    )


def make_stretched():
    # engineered rational Fano polytope with vartheta > 1 (regression: 38/23)
    return validate_fano(
        HPolytope.from_inequalities(
            2, [([-1, 0], 1), ([0, 1], 1), ([0, -1], 1), ([2, 1], 1), ([2, -1], 1)]
        )
    )


@pytest.fixture(scope="session")
def p1():
    return make_p1()


@pytest.fixture(scope="session")
def p2():
    return make_p2()


@pytest.fixture(scope="session")
def bl1p2():
    return make_bl1p2()


@pytest.fixture(scope="session")
def p1xp1():
    return make_p1xp1()


@pytest.fixture(scope="session")
def stretched():
    return make_stretched()


@pytest.fixture(scope="session")
def corpus(p1, p2, bl1p2, p1xp1):
    return {"p1": p1, "p2": p2, "bl1p2": bl1p2, "p1xp1": p1xp1}


def pl(domain, *rows):
    """PLConcave from (gradient..., constant) rows."""
    affines = [AffineFn.make(row[:-1], row[-1]) for row in rows]
    return PLConcave.make(affines, domain)


@pytest.fixture(scope="session")
def step_p1(p1):
    """min{0, -x} on the interval [-1, 1]."""
    return pl(p1, (0, 0), (-1, 0))


@pytest.fixture(scope="session")
def step_p2(p2):
    """min{0, -x_1} on the anticanonical triangle."""
    return pl(p2, (0, 0, 0), (-1, 0, 0))


def frac(n, d=1):
    return Fraction(n, d)

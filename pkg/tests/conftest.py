import random

import pytest
from hypothesis import settings

from klrbench.klr import KLRElement, algebra_for
from klrbench.rootdata import build_root_datum

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def sl2():
    return build_root_datum([1])


def a2():
    return build_root_datum([1, 2], [(1, 2)])


def a3():
    return build_root_datum([1, 2, 3], [(1, 2), (2, 3)])


def affine_a1():
    return build_root_datum([1, 2], [(1, 2), (1, 2)])


@pytest.fixture
def d_sl2():
    return sl2()


@pytest.fixture
def d_a2():
    return a2()


@pytest.fixture
def d_a3():
    return a3()


@pytest.fixture
def d_aff():
    return affine_a1()


def random_homogeneous(d, word_content, deg, rng: random.Random, max_terms=3):
    """Random homogeneous element of the given degree on words of the given
    content (a tuple of vertices), or None if that degree is empty."""
    alg = algebra_for(d)
    content = {}
    for v in word_content:
        content[v] = content.get(v, 0) + 1
    words = alg.words(content)
    basis = alg.basis_of_degree(words, deg)
    if not basis:
        return None
    x = KLRElement(len(word_content))
    for b in rng.sample(basis, min(len(basis), rng.randint(1, max_terms))):
        c = rng.choice([-3, -2, -1, 1, 2, 3])
        x = x + KLRElement.basis(b, c)
    return x


# One line per acceptance criterion, printed after the run.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)

import pytest
from hypothesis import given, strategies as st

from klrbench.klr import KLRElement, algebra_for
from klrbench.polyrep import MultiPoly, PolyVector, act_element, divided_difference
from conftest import a2, random_homogeneous

import random


def poly(n):
    exps = st.tuples(*[st.integers(0, 3)] * n)
    return st.dictionaries(exps, st.integers(-4, 4), max_size=5).map(lambda c: MultiPoly(n, c))


def y(n, k):
    return MultiPoly.var(n, k)


def test_divided_difference_examples():
    assert divided_difference(y(2, 1), 1) == MultiPoly.const(2, 1)
    assert divided_difference(y(2, 1) * y(2, 2), 1).is_zero()
    assert divided_difference(y(2, 1) * y(2, 1), 1) == y(2, 1) + y(2, 2)
    with pytest.raises(IndexError):
        divided_difference(y(2, 1), 2)


@given(st.integers(2, 4).flatmap(lambda n: st.tuples(st.just(n), poly(n), st.integers(1, n - 1))))
def test_divided_difference_squares_to_zero(args):
    n, f, k = args
    assert divided_difference(divided_difference(f, k), k).is_zero()


@given(st.integers(2, 4).flatmap(lambda n: st.tuples(poly(n), poly(n), st.integers(1, n - 1))))
def test_twisted_leibniz(args):
    f, g, k = args
    lhs = divided_difference(f * g, k)
    rhs = divided_difference(f, k) * g + f.swap(k) * divided_difference(g, k)
    assert lhs == rhs


def test_action_examples(d_a2):
    f = y(2, 1)
    v = PolyVector.single((2, 1), f)
    assert act_element(d_a2, KLRElement.idempotent((1, 2)), v).is_zero()
    one = PolyVector.single((1, 1), MultiPoly.const(2, 1))
    alg = algebra_for(d_a2)
    y1 = alg.product([("y", 1)], KLRElement.idempotent((1, 1)))
    assert act_element(d_a2, y1, one) == PolyVector.single((1, 1), y(2, 1))
    psi = alg.product([("psi", 1)], KLRElement.idempotent((1, 1)))
    assert act_element(d_a2, psi, PolyVector.single((1, 1), y(2, 1))) == one


def test_strand_mismatch(d_a2):
    with pytest.raises(ValueError):
        act_element(d_a2, KLRElement.idempotent((1,)), PolyVector.single((1, 2), MultiPoly.const(2, 1)))


@given(st.integers(0, 10 ** 6))
def test_action_respects_products(seed):
    d = a2()
    rng = random.Random(seed)
    word = tuple(rng.choice([1, 2]) for _ in range(rng.randint(1, 3)))
    x = random_homogeneous(d, word, rng.choice([0, 2, 4]), rng) or KLRElement.idempotent(word)
    z = random_homogeneous(d, word, rng.choice([-2, 0, 2]), rng) or KLRElement.idempotent(word)
    prod = algebra_for(d).mul(x, z)
    n = len(word)
    for w in {b.word for b, _ in z.items()} | {b.target for b, _ in z.items()}:
        v = PolyVector.single(w, MultiPoly.var(n, 1) * MultiPoly.var(n, n) + MultiPoly.const(n, 1))
        assert act_element(d, prod, v) == act_element(d, x, act_element(d, z, v))

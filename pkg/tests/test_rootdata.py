import pytest
from hypothesis import given, strategies as st

from klrbench.rootdata import (
    BivariatePoly,
    LaurentPoly,
    build_root_datum,
    cartan_pairing,
    mu_from_dimvec,
    q_polynomial,
    quantum_integer,
    t_scalar,
)
from conftest import a2, a3, affine_a1, sl2


def test_a2_epsilon_and_cartan(d_a2):
    assert d_a2.epsilon(1, 2) == 1
    assert d_a2.epsilon(2, 1) == 0
    assert d_a2.cartan(1, 2) == -1


def test_single_vertex():
    d = sl2()
    assert d.cartan_matrix == ((2,),)
    assert d.epsilon(1, 1) == 0


def test_affine_a1():
    d = affine_a1()
    assert d.epsilon(1, 2) == 2
    assert d.cartan(1, 2) == -2


def test_loop_rejected_naming_vertex():
    with pytest.raises(ValueError, match="3"):
        build_root_datum([1, 2, 3], [(1, 2), (3, 3)])


def test_q_polynomials(d_a2):
    u, v = BivariatePoly.linear(1, 0), BivariatePoly.linear(0, 1)
    assert q_polynomial(d_a2, 1, 2) == v - u
    assert q_polynomial(d_a2, 2, 1) == u - v
    assert q_polynomial(affine_a1(), 1, 2) == (u - v) ** 2
    assert q_polynomial(a3(), 1, 3) == BivariatePoly({(0, 0): 1})
    with pytest.raises(ValueError):
        q_polynomial(d_a2, 1, 1)


def test_t_scalars(d_a2):
    assert t_scalar(d_a2, 1, 2) == -1
    assert t_scalar(d_a2, 2, 1) == 1
    assert t_scalar(d_a2, 1, 1) == 1
    assert t_scalar(a3(), 1, 3) == 1


def test_quantum_integers():
    assert quantum_integer(2) == LaurentPoly({1: 1, -1: 1})
    assert quantum_integer(0).is_zero()
    assert quantum_integer(3) == LaurentPoly.parse("q^2 + 1 + q^-2")
    assert quantum_integer(-3) == -quantum_integer(3)


@given(st.integers(-12, 12))
def test_quantum_integer_bar_invariant(n):
    assert quantum_integer(n).bar() == quantum_integer(n)


def test_cartan_pairing(d_a2):
    assert cartan_pairing(d_a2, d_a2.simple_root(1), 1) == 2
    assert cartan_pairing(d_a2, d_a2.simple_root(2), 1) == -1
    assert cartan_pairing(d_a2, d_a2.fundamental_weight(1), 1) == 1


def test_mu_from_dimvec(d_a2):
    s = sl2()
    assert mu_from_dimvec(s, s.weight((2,)), (1,)).coords == (0,)
    lam = d_a2.weight((1, 1))
    assert mu_from_dimvec(d_a2, lam, (0, 0)) == lam
    assert mu_from_dimvec(d_a2, lam, (1, 1)).coords == (0, 0)
    with pytest.raises(ValueError):
        mu_from_dimvec(s, s.weight((-1,)), (0,))


graphs = st.sampled_from([sl2(), a2(), a3(), affine_a1(),
                          build_root_datum([1, 2, 3], [(2, 1), (3, 1), (2, 3)])])


@given(graphs)
def test_datum_invariants(d):
    for i in d.vertices:
        assert d.cartan(i, i) == 2
        assert d.d(i) == 1
        for j in d.vertices:
            assert d.cartan(i, j) == d.cartan(j, i)
            if i != j:
                assert d.cartan(i, j) == -(d.epsilon(i, j) + d.epsilon(j, i))
                assert d.t(i, j) * d.t(j, i) == (-1) ** (-d.cartan(i, j))
                assert q_polynomial(d, i, j) == q_polynomial(d, j, i).swap()


@given(graphs, st.data())
def test_dimvec_round_trip(d, data):
    lam = d.weight(tuple(data.draw(st.integers(0, 3)) for _ in d.vertices))
    v = tuple(data.draw(st.integers(0, 3)) for _ in d.vertices)
    mu = mu_from_dimvec(d, lam, v)
    assert mu + d.root_to_weight(v) == lam

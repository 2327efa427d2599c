import pytest
from hypothesis import given, settings, strategies as st

from klrbench.klr import check_relations_matrices, cyclotomic_quotient
from klrbench.laurent import LaurentPoly
from klrbench.uqrep import shapovalov_cyclotomic_dim
from conftest import a2, sl2


@pytest.mark.parametrize("lam,nu,dim", [((1,), (1,), 1), ((1,), (2,), 0), ((2,), (1,), 2)])
def test_small_quotients(lam, nu, dim):
    d = sl2()
    C = cyclotomic_quotient(d, d.weight(lam), nu, 6)
    assert C.stabilized
    assert C.dimension == dim


def test_graded_dim_of_truncated_polynomial_ring():
    d = sl2()
    C = cyclotomic_quotient(d, d.weight((2,)), (1,), 6)
    assert C.graded_dim == LaurentPoly.parse("1 + q^2")


@pytest.mark.parametrize("N,k,dim", [(2, 2, 4), (3, 1, 3), (3, 2, 12), (3, 3, 36)])
def test_nilhecke_quotient_dims(N, k, dim):
    # (k!)^2 * binomial(N, k)
    d = sl2()
    assert cyclotomic_quotient(d, d.weight((N,)), (k,), 12).dimension == dim


@pytest.mark.parametrize("lam,nu", [((1, 1), (1, 1)), ((1, 1), (2, 1)), ((1, 0), (1, 1)), ((2, 0), (2, 1))])
def test_a2_matches_shapovalov(lam, nu):
    d = a2()
    C = cyclotomic_quotient(d, d.weight(lam), nu, 8)
    assert C.stabilized
    assert C.graded_dim == shapovalov_cyclotomic_dim(d, d.weight(lam), nu)


@pytest.mark.parametrize("lam,nu", [((2,), (2,)), ((3,), (2,))])
def test_operator_tables_satisfy_relations(lam, nu):
    d = sl2()
    C = cyclotomic_quotient(d, d.weight(lam), nu, 10)
    r = check_relations_matrices(d, C.n, C.operator_tables(), C.words)
    assert r.passed, r.first_failure


def test_unstabilized_flag():
    d = sl2()
    C = cyclotomic_quotient(d, d.weight((3,)), (3,), 2)
    assert not C.stabilized


@settings(max_examples=8)
@given(st.sampled_from([((2,), (1,)), ((2,), (2,)), ((3,), (2,)), ((1, 1), (1, 1)), ((1, 0), (1, 1))]),
       st.integers(0, 3))
def test_dimension_stable_under_larger_cap(case, extra):
    lam, nu = case
    d = sl2() if len(lam) == 1 else a2()
    base = cyclotomic_quotient(d, d.weight(lam), nu, 8)
    assert base.stabilized
    bigger = cyclotomic_quotient(d, d.weight(lam), nu, 8 + 2 * extra)
    assert bigger.dimension == base.dimension
    assert bigger.graded_dim == base.graded_dim

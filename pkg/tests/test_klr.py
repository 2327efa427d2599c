import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from klrbench.klr import (
    DiagramBasisElement,
    ExprSyntaxError,
    KLRAlgebra,
    KLRElement,
    RewriteLimitExceeded,
    algebra_for,
    check_relations,
    degree,
    evaluate_expression,
    graded_dim_hom,
    multiply,
    parse_expression,
)
from klrbench.laurent import LaurentPoly
from klrbench.polyrep import MultiPoly, PolyVector, act_element, monomials_up_to
from conftest import a2, a3, affine_a1, random_homogeneous, sl2

E = KLRElement.idempotent


def ev(d, text):
    return evaluate_expression(d, text)


def test_idempotents_orthogonal(d_a2):
    assert multiply(d_a2, E((1, 2)), E((1, 2))) == E((1, 2))
    assert multiply(d_a2, E((1, 2)), E((2, 1))) == 0


def test_same_label_double_crossing_vanishes(d_a2):
    assert ev(d_a2, "psi(1)*psi(1)*e(1 1)") == 0


def test_double_crossing_gives_q_polynomial(d_a2):
    # Q_12(u, v) = v - u
    assert ev(d_a2, "psi(1)*psi(1)*e(1 2)") == ev(d_a2, "y(2)*e(1 2) - y(1)*e(1 2)")
    assert ev(d_a2, "psi(1)*psi(1)*e(2 1)") == ev(d_a2, "y(1)*e(2 1) - y(2)*e(2 1)")


def test_braid_correction(d_a2):
    assert ev(d_a2, "psi(2)*psi(1)*psi(2)*e(1 2 1)") == ev(d_a2, "psi(1)*psi(2)*psi(1)*e(1 2 1) + e(1 2 1)")


def test_degrees(d_a2):
    dot = DiagramBasisElement((1,), (), (1,))
    assert degree(d_a2, dot) == 2
    assert degree(d_a2, DiagramBasisElement((1, 1), (1,), (0, 0))) == -2
    assert degree(d_a2, DiagramBasisElement((1, 2), (1,), (0, 0))) == 1
    d3 = a3()
    assert degree(d3, DiagramBasisElement((1, 3), (1,), (0, 0))) == 0


def test_graded_dims(d_sl2):
    assert graded_dim_hom(d_sl2, (1,), (1,), 6) == LaurentPoly({0: 1, 2: 1, 4: 1, 6: 1})
    assert graded_dim_hom(a2(), (1, 2), (1, 1), 6).is_zero()
    g = graded_dim_hom(d_sl2, (1, 1), (1, 1), 0)
    assert g[-2] == 1


def test_relation_suite_small():
    assert check_relations(a2(), 3).passed
    assert check_relations(affine_a1(), 2).passed


def test_corrupted_sign_fails_at_double_crossing():
    bad = a2().with_t_sign(1, 2, 1)
    r = check_relations(bad, 2)
    assert not r.passed
    assert "double-crossing" in r.first_failure


def _hom_elements(seed):
    rng = random.Random(seed)
    d = rng.choice([sl2(), a2()])
    n = rng.randint(1, 3)
    word = tuple(rng.choice(d.vertices) for _ in range(n))
    degs = [g for g in range(-4, 7)]
    out = []
    while len(out) < 3:
        x = random_homogeneous(d, word, rng.choice(degs), rng)
        if x is not None:
            out.append(x)
    return d, out


@given(st.integers(0, 10 ** 6))
def test_associativity(seed):
    d, (x, y, z) = _hom_elements(seed)
    assert multiply(d, multiply(d, x, y), z) == multiply(d, x, multiply(d, y, z))


@given(st.integers(0, 10 ** 6))
def test_degree_additivity(seed):
    d, (x, y, _) = _hom_elements(seed)
    alg = algebra_for(d)
    p = multiply(d, x, y)
    if not p.is_zero():
        assert alg.element_degree(p) == alg.element_degree(x) + alg.element_degree(y)


@given(st.integers(0, 10 ** 6))
def test_rewriting_matches_polynomial_action(seed):
    d, (x, y, _) = _hom_elements(seed)
    n = x.n
    p = multiply(d, x, y)
    words = {b.word for b, _ in y.items()}
    for m in monomials_up_to(n, 2):
        for w in words:
            v = PolyVector.single(w, MultiPoly.monomial(m))
            assert act_element(d, p, v) == act_element(d, x, act_element(d, y, v))


@given(st.integers(0, 10 ** 6))
def test_idempotent_sum_is_identity(seed):
    d, (x, _, _) = _hom_elements(seed)
    alg = algebra_for(d)
    words = alg.words(alg.content(next(iter(x.items()))[0].word))
    one = KLRElement(x.n)
    for w in words:
        one = one + E(w)
    assert multiply(d, one, x) == x
    assert multiply(d, x, one) == x


@given(st.lists(st.tuples(st.sampled_from(["y", "psi"]), st.integers(1, 3)), min_size=1, max_size=8),
       st.sampled_from([(1, 2, 1, 2), (1, 1, 2, 1), (2, 1, 1, 1), (1, 2, 2, 1)]))
def test_rewriting_terminates(tokens, word):
    alg = KLRAlgebra(a2(), max_steps=200_000)
    alg.product(tokens, E(word))


def test_step_counter_trips():
    alg = KLRAlgebra(affine_a1(), max_steps=5)
    with pytest.raises(RewriteLimitExceeded):
        alg.product([("psi", 1), ("psi", 2), ("psi", 1), ("psi", 2), ("psi", 1)], E((1, 2, 1)))


def test_empty_strand_algebra(d_a2):
    assert multiply(d_a2, E(()), E(())) == E(())


def test_expression_grammar(d_a2):
    monos = parse_expression("2*psi(1)*y(2)^3*e(1 2) - e(2 1)", d_a2)
    assert monos[0][0] == 2 and monos[1][0] == -1
    assert ev(d_a2, "(1/2)*e(1 2) + 1/2*e(1 2)") == E((1, 2))
    assert ev(d_a2, "-(y(1) - y(1))*e(1)") == 0
    assert ev(d_a2, "y(1)^2*e(1)") * Fraction(1) == ev(d_a2, "y(1)*y(1)*e(1)")


@pytest.mark.parametrize("text,pos", [
    ("psi(1)*+e(1 1)", 7),
    ("psi(1", 5),
    ("e(1 3)", 4),
    ("2 e(1)", 2),
    ("", 0),
])
def test_expression_errors_report_position(d_a2, text, pos):
    with pytest.raises(ExprSyntaxError) as info:
        parse_expression(text, d_a2)
    assert info.value.pos == pos
    assert f"position {pos}" in str(info.value)

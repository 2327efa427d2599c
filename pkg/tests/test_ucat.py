import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from klrbench.klr import cyclotomic_quotient
from klrbench.laurent import LaurentPoly, Matrix
from klrbench.ucat import (
    BubbleError,
    BubbleSeries,
    CandidateAction,
    CandidateError,
    DiagramTypeError,
    OneMorWord,
    OperatorTable,
    StringDiagram,
    bubble_convolution,
    certify,
    diagram_degree,
    ground_truth_action,
    one_mor_weight,
    parse_candidate,
    perturb,
    print_candidate,
    solve_fake_bubbles,
    swap_layers,
)
from klrbench.rootdata import Weight
from conftest import a2, sl2

E1, F1, E2, F2 = ("E", 1), ("F", 1), ("E", 2), ("F", 2)


# --- words and diagrams ----------------------------------------------------

def test_one_mor_weights():
    assert one_mor_weight(OneMorWord((E1, F1))) == {}
    assert one_mor_weight(OneMorWord((F1, F2, F1))) == {1: -2, 2: -1}
    assert one_mor_weight(OneMorWord(())) == {}


symbols = st.lists(st.sampled_from([E1, F1, E2, F2]), max_size=6)


@given(symbols, symbols)
def test_one_mor_weight_additive(a, b):
    total = {}
    for part in (one_mor_weight(a), one_mor_weight(b)):
        for k, v in part.items():
            total[k] = total.get(k, 0) + v
    assert one_mor_weight(OneMorWord(tuple(a)) + OneMorWord(tuple(b))) == {k: v for k, v in total.items() if v}


def test_codomain(d_a2):
    w = OneMorWord((E1, F2), d_a2.weight((0, 0)))
    assert w.codomain(d_a2) == d_a2.simple_root(1) - d_a2.simple_root(2)


def test_generator_degrees(d_sl2):
    lam = d_sl2.weight((0,))
    assert diagram_degree(d_sl2, StringDiagram((E1,), lam, (("dot", 0),))) == 2
    assert diagram_degree(d_sl2, StringDiagram((E1,), lam, ())) == 0
    # cap closing a region with <lambda, alpha> = 2
    cap = StringDiagram((E1, F1), d_sl2.weight((4,)), (("cap", 0),))
    assert cap.region_weights(d_sl2)[0][1].coords == (2,)
    assert diagram_degree(d_sl2, cap) == -3
    assert diagram_degree(d_sl2, StringDiagram((E1, E1), lam, (("cross", 0),))) == -2


def test_crossing_degree_by_colors(d_a2):
    lam = d_a2.weight((0, 0))
    assert diagram_degree(d_a2, StringDiagram((E1, E2), lam, (("cross", 0),))) == 1


@pytest.mark.parametrize("m", range(-3, 4))
def test_zigzags_have_degree_zero(d_sl2, m):
    lam = d_sl2.weight((m,))
    zig = StringDiagram((E1,), lam, (("cup", 1, "F", 1), ("cap", 0)), top=(E1,))
    zag = StringDiagram((E1,), lam, (("cup", 0, "E", 1), ("cap", 1)), top=(E1,))
    assert diagram_degree(d_sl2, zig) == 0
    assert diagram_degree(d_sl2, zag) == 0


def test_type_errors_name_interface(d_sl2):
    lam = d_sl2.weight((0,))
    with pytest.raises(DiagramTypeError, match="layer 1"):
        diagram_degree(d_sl2, StringDiagram((E1, E1), lam, (("cap", 0),)))
    with pytest.raises(DiagramTypeError, match="layer 2"):
        diagram_degree(d_sl2, StringDiagram((E1,), lam, (("dot", 0), ("cross", 0))))
    with pytest.raises(DiagramTypeError, match="top boundary"):
        diagram_degree(d_sl2, StringDiagram((E1,), lam, (), top=(F1,)))


layer_gen = st.one_of(
    st.tuples(st.just("dot"), st.integers(0, 3)),
    st.tuples(st.just("cross"), st.integers(0, 3)),
    st.tuples(st.just("cup"), st.integers(0, 4), st.sampled_from(["E", "F"]), st.sampled_from([1, 2])),
    st.tuples(st.just("cap"), st.integers(0, 3)),
)


@given(st.lists(st.sampled_from([E1, F1, E2, F2]), min_size=1, max_size=4), st.lists(layer_gen, max_size=6),
       st.integers(-2, 2), st.integers(-2, 2), st.data())
def test_degree_invariant_under_disjoint_swaps(bottom, layers, a, b, data):
    d = a2()
    s = StringDiagram(tuple(bottom), d.weight((a, b)), tuple(layers))
    try:
        deg = diagram_degree(d, s)
    except DiagramTypeError:
        return
    if len(layers) < 2:
        return
    k = data.draw(st.integers(0, len(layers) - 2))
    try:
        t = swap_layers(s, k)
    except DiagramTypeError:
        return
    assert t.interfaces()[-1] == s.interfaces()[-1]
    assert diagram_degree(d, t) == deg


# --- bubbles ---------------------------------------------------------------

def test_degree_zero_bubble_is_one(d_sl2):
    s = solve_fake_bubbles(d_sl2, 1, d_sl2.weight((2,)), {"cw": {}, "ccw": {}}, 0)
    assert s.cw_at(0) == 1 and s.ccw_at(0) == 1


def test_zero_real_bubbles_give_zero_fakes(d_sl2):
    lam = d_sl2.weight((3,))
    cw = {k: 0 for k in range(3, 9)}
    s = solve_fake_bubbles(d_sl2, 1, lam, {"cw": cw}, 10)
    assert all(v == 0 for k, v in s.ccw.items() if s.ccw_degree(k) > 0)


def test_first_fake_bubble(d_sl2):
    s = solve_fake_bubbles(d_sl2, 1, d_sl2.weight((2,)), {"cw": {2: Fraction(5)}}, 2)
    assert s.ccw_at(2) == -5
    assert s.ccw_dots(2) < 0   # a fake bubble


def test_bubble_axioms_enforced(d_sl2):
    with pytest.raises(BubbleError, match="degree 0"):
        solve_fake_bubbles(d_sl2, 1, d_sl2.weight((2,)), {"cw": {1: 3}}, 4)
    with pytest.raises(BubbleError, match="must be 0"):
        solve_fake_bubbles(d_sl2, 1, d_sl2.weight((2,)), {"cw": {0: 3}}, 4)
    with pytest.raises(BubbleError, match="underdetermined"):
        solve_fake_bubbles(d_sl2, 1, d_sl2.weight((2,)), {"cw": {}}, 4)


def test_supplied_values_are_checked(d_sl2):
    with pytest.raises(BubbleError, match="inversion"):
        solve_fake_bubbles(d_sl2, 1, d_sl2.weight((0,)), {"cw": {0: 1}, "ccw": {0: 1}}, 2)


@given(st.integers(-4, 4), st.lists(st.fractions(-5, 5, max_denominator=7), min_size=6, max_size=6),
       st.lists(st.booleans(), min_size=6, max_size=6))
def test_inversion_identity(m, values, side):
    d = sl2()
    given_ = {"cw": {}, "ccw": {}}
    for t, (v, cw) in enumerate(zip(values, side), start=1):
        if cw:
            given_["cw"][t + m - 1] = v
        else:
            given_["ccw"][t - m - 1] = v
    s = solve_fake_bubbles(d, 1, d.weight((m,)), given_, 12)
    for t in range(7):
        assert bubble_convolution(s, t - 2) == (1 if t == 0 else 0)


# --- certifier -------------------------------------------------------------

def toy_sl2():
    d = sl2()
    top, bot = Weight((1,)), Weight((-1,))
    one = Matrix(1, 1, [[LaurentPoly.const(1)]], LaurentPoly())
    c = CandidateAction([top, bot], {top: 1, bot: 1},
                        E={(1, bot): one}, F={(1, top): one},
                        end_dims={top: LaurentPoly.const(1), bot: LaurentPoly.const(1)})
    return d, c


def test_toy_action_passes():
    d, c = toy_sl2()
    r = certify(d, c)
    assert r.passes("1", "2", "3", "5")
    assert r.details["3"][(1, Weight((1,)))] == "1"
    assert r.cyclicity == "not checked"


def test_doubled_entry_fails_commutator():
    d, c = toy_sl2()
    two = Matrix(1, 1, [[LaurentPoly.const(2)]], LaurentPoly())
    c.F[(1, Weight((1,)))] = two
    r = certify(d, c)
    assert r.conditions["3"] == "fail"
    assert any("mu=(1)" in w for w in r.witnesses["3"])


def test_structural_errors():
    d, c = toy_sl2()
    c.E[(1, Weight((-1,)))] = Matrix(2, 1, zero=LaurentPoly())
    with pytest.raises(CandidateError, match="shape"):
        certify(d, c)
    d, c = toy_sl2()
    c.E[(1, Weight((5,)))] = Matrix(0, 0, zero=LaurentPoly())
    with pytest.raises(CandidateError, match="undeclared"):
        certify(d, c)


def test_positivity_failure():
    d, c = toy_sl2()
    c.end_dims[Weight((1,))] = LaurentPoly.parse("q^-2 + 1")
    assert certify(d, c).conditions["2"] == "fail"


def test_integrability_failure():
    d = sl2()
    top, bot = Weight((1,)), Weight((-1,))
    c = CandidateAction([top, bot], {top: 1, bot: 2})
    assert certify(d, c).conditions["1"] == "fail"


@pytest.mark.parametrize("lam", [(1,), (2,), (3,)])
def test_ground_truth_sl2(lam):
    d = sl2()
    c = ground_truth_action(d, d.weight(lam))
    assert certify(d, c).passes("1", "2", "3", "5")


def test_ground_truth_a2_and_perturbations():
    d = a2()
    c = ground_truth_action(d, d.weight((1, 0)))
    assert certify(d, c).passes("1", "2", "3", "5")
    rng = random.Random(3)
    for _ in range(20):
        bad, desc = perturb(c, rng)
        assert not certify(d, bad).passes("1", "2", "3", "5"), desc


def test_condition_four_tables_and_sideways():
    d = sl2()
    C = cyclotomic_quotient(d, d.weight((2,)), (2,), 8)
    c = ground_truth_action(d, d.weight((2,)), with_end_dims=False)
    c.tables = [OperatorTable(C.n, C.words, C.operator_tables(), C.degrees)]
    ident = [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]]
    c.sideways = [(1, 1, ident, ident)]
    assert certify(d, c).conditions["4"] == "pass"
    broken = [row[:] for row in C.operator_tables()[("psi", 1)]]
    broken[0][1] = broken[0][1] + 1
    ops = dict(C.operator_tables())
    ops[("psi", 1)] = broken
    c.tables = [OperatorTable(C.n, C.words, ops)]
    assert certify(d, c).conditions["4"] == "fail"


def test_sideways_sign_checked():
    d = a2()
    c = ground_truth_action(d, d.weight((1, 0)), with_end_dims=False)
    one = [[Fraction(1)]]
    c.sideways = [(1, 2, one, one)]          # S'S should be t_12 = -1
    assert certify(d, c).conditions["4"] == "fail"
    c.sideways = [(1, 2, one, [[Fraction(-1)]])]
    r = certify(d, c)
    # S'S = t_12 = -1 but SS' must be t_21 = +1
    assert r.conditions["4"] == "fail"


def test_non_homogeneous_table_rejected():
    d = sl2()
    C = cyclotomic_quotient(d, d.weight((2,)), (1,), 6)
    ops = C.operator_tables()
    ops[("y", 1)] = [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(0)]]
    c = CandidateAction([], {}, tables=[OperatorTable(C.n, C.words, ops, C.degrees)])
    with pytest.raises(CandidateError, match="homogeneous"):
        certify(d, c)


# --- fixture format --------------------------------------------------------

def test_fixture_round_trip():
    d = sl2()
    C = cyclotomic_quotient(d, d.weight((2,)), (2,), 8)
    c = ground_truth_action(d, d.weight((2,)))
    c.tables = [OperatorTable(C.n, C.words, C.operator_tables(), C.degrees)]
    c.identities = [("cross and cap", [[Fraction(1, 2)]], [[Fraction(1, 2)]])]
    text = print_candidate(d, c)
    back = parse_candidate(d, text)
    assert back == c
    assert print_candidate(d, back) == text


@given(st.integers(0, 10 ** 6))
def test_fixture_round_trip_perturbed(seed):
    d = a2()
    c, _ = perturb(ground_truth_action(d, d.weight((1, 0)), with_end_dims=False), random.Random(seed))
    text = print_candidate(d, c)
    assert print_candidate(d, parse_candidate(d, text)) == text


def test_fixture_errors_have_line_numbers():
    d = sl2()
    with pytest.raises(CandidateError, match="line 2"):
        parse_candidate(d, "weight 1 dim 1\nmatrix E 7 at 1 shape 1x1\n  row 1\n")
    with pytest.raises(CandidateError, match="line 1"):
        parse_candidate(d, "bogus\n")

import random
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from mwgb.algebra import PolyRing
from mwgb.errors import DimensionMismatch, NonPositiveW1, RankDeficient, UnboundedEnumeration
from mwgb.grading import (
    MgrevlexOrder,
    WeightMatrix,
    are_equivalent,
    enumerate_monomials,
    is_w_homogeneous,
    lp_feasible,
    mdeg,
    mgrevlex_cmp,
    monomials_by_mdeg,
    rational_rank,
    w_homogeneous_decompose,
    weight_properties,
)

from conftest import brute_monomials, random_unimodular, ring_for

W_EX = WeightMatrix([[1, 1, 1], [1, 2, 3]])


def test_mdeg_examples():
    assert mdeg(W_EX, (1, 2, 0)) == (3, 5)
    assert mdeg(W_EX, (0, 0, 0)) == (0, 0)
    assert mdeg(WeightMatrix([[1, 1], [0, 1]]), (1, 1)) == (2, 1)


def test_mdeg_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        mdeg(W_EX, (1, 2))


def test_rank_deficient_rejected():
    with pytest.raises(RankDeficient):
        WeightMatrix([[1, 1], [2, 2]])
    with pytest.raises(RankDeficient):
        WeightMatrix([[1], [2]])


def test_decompose_examples():
    R = ring_for(W_EX)
    f = R.poly({(1, 2, 0): 1, (2, 0, 1): 1})
    assert list(w_homogeneous_decompose(W_EX, f)) == [(3, 5)]
    assert w_homogeneous_decompose(W_EX, R.zero()) == {}
    W = WeightMatrix([[1, 1], [1, 2]])
    g = ring_for(W).poly({(1, 0): 1, (0, 1): 1})
    assert set(w_homogeneous_decompose(W, g)) == {(1, 1), (1, 2)}
    assert not is_w_homogeneous(W, g)


def test_equivalence_examples():
    W = WeightMatrix([[1, 1], [0, 1]])
    assert are_equivalent(W, W)
    assert are_equivalent(W, WeightMatrix([[-1, -1], [0, 1]]))
    assert not are_equivalent(WeightMatrix([[1, 0]]), WeightMatrix([[0, 1]]))
    with pytest.raises(DimensionMismatch):
        are_equivalent(W, W_EX)


def test_weight_properties_examples():
    p = weight_properties(WeightMatrix([[1, 2, 3], [2, 1, 1]]))
    assert p.positive and p.nonnegative and p.positive_type and p.size_bounded
    assert not weight_properties(WeightMatrix([[1, -1]])).size_bounded
    q = weight_properties(WeightMatrix([[-1, -1], [0, 1]]))
    assert q.positive_type and not q.nonnegative


def test_positive_type_false_case():
    # every combination a*(1,-1) has entries of opposite signs
    assert not weight_properties(WeightMatrix([[1, -1]])).positive_type


def test_lp_feasible_small():
    assert lp_feasible([([1], 2), ([-1], -1)])  # 1 <= x <= 2
    assert not lp_feasible([([1], 1), ([-1], -2)])  # 2 <= x <= 1
    assert not lp_feasible([([-1, 0], 0)], eqs=[([1, 1], 1), ([1, 1], 2)])
    assert lp_feasible([([-1, 0], 0), ([0, -1], 0)], eqs=[([1, 1], Fraction(1, 2))])


def test_rational_rank():
    assert rational_rank([[1, 2], [2, 4]]) == 1
    assert rational_rank([[1, 2], [2, 5]]) == 2


def test_mgrevlex_examples():
    W = WeightMatrix([[1, 1], [0, 1]])
    assert mgrevlex_cmp(W, (0, 0), (1, 1)) == -1
    Wp = WeightMatrix([[-1, -1], [0, 1]])
    assert mgrevlex_cmp(Wp, (1, 1), (0, 0)) == -1
    assert mgrevlex_cmp(W_EX, (1, 2, 0), (2, 0, 1)) == 1
    assert mgrevlex_cmp(W_EX, (1, 2, 0), (1, 2, 0)) == 0


def test_enumerate_examples():
    assert set(enumerate_monomials(W_EX, mdeg=(4, 6))) == {(2, 2, 0), (3, 0, 1)}
    assert enumerate_monomials(W_EX, w1_degree=0) == ((0, 0, 0),)
    assert len(enumerate_monomials(W_EX, w1_degree=2)) == 6


def test_enumerate_needs_positive_w1():
    with pytest.raises(UnboundedEnumeration):
        enumerate_monomials(WeightMatrix([[1, 0], [0, 1]]), w1_degree=2)
    with pytest.raises(NonPositiveW1):
        WeightMatrix([[1, -1]]).require_positive_w1()


def test_enumerate_matches_brute_force():
    for W in (W_EX, WeightMatrix([[1, 2, 3], [2, 1, 1]]), WeightMatrix([[2, 1, 3, 1], [0, 1, 1, 4]])):
        for d in range(11):
            got = enumerate_monomials(W, w1_degree=d)
            assert len(got) == len(set(got))
            assert set(got) == brute_monomials(W.w1, d)
            for deg, mons in monomials_by_mdeg(W, d).items():
                assert set(mons) == {m for m in got if W.mdeg(m) == deg}
                assert set(enumerate_monomials(W, mdeg=deg)) == set(mons)


# --- properties ---------------------------------------------------------

weights = st.lists(st.lists(st.integers(-3, 4), min_size=3, max_size=3), min_size=1, max_size=3)
mono = st.tuples(*[st.integers(0, 4)] * 3)


def _wm(rows):
    try:
        return WeightMatrix(rows)
    except RankDeficient:
        assume(False)


@given(weights, mono, mono)
def test_grading_law(rows, a, b):
    W = _wm(rows)
    ab = tuple(x + y for x, y in zip(a, b))
    assert W.mdeg(ab) == tuple(x + y for x, y in zip(W.mdeg(a), W.mdeg(b)))


@given(weights, mono, mono, mono)
def test_order_total_and_multiplicative(rows, a, b, mu):
    W = _wm(rows)
    c = mgrevlex_cmp(W, a, b)
    assert c == -mgrevlex_cmp(W, b, a)
    assert (c == 0) == (a == b)
    shift = lambda m: tuple(x + y for x, y in zip(m, mu))
    assert mgrevlex_cmp(W, shift(a), shift(b)) == c


nonneg_weights = st.lists(st.lists(st.integers(0, 3), min_size=3, max_size=3), min_size=1, max_size=3)


@given(nonneg_weights, mono)
def test_one_is_smallest_for_monomial_orders(rows, m):
    W = _wm(rows)
    props = weight_properties(W)
    assume(W.has_positive_w1() or (props.nonnegative and props.size_bounded))
    assume(any(m))
    assert mgrevlex_cmp(W, (0, 0, 0), m) == -1


@given(weights, st.integers(0, 2**32))
@settings(max_examples=60)
def test_equivalent_under_unimodular(rows, seed):
    W = _wm(rows)
    P = random_unimodular(W.k, random.Random(seed))
    assert are_equivalent(W, W.transform(P))


@given(st.lists(st.integers(0, 3), min_size=2, max_size=3))
def test_size_bounded_matches_zero_degree_monomials(row):
    # k = 1: size-bounded iff no nontrivial monomial has degree 0 iff all weights > 0,
    # for non-negative rows
    assume(any(row))
    W = WeightMatrix([row])
    assert weight_properties(W).size_bounded == all(w > 0 for w in row)


def test_order_is_keyed_on_ring():
    R = PolyRing(3, 101, MgrevlexOrder(W_EX))
    f = R.poly({(2, 0, 1): 1, (1, 2, 0): 1})
    assert f.lm == (1, 2, 0)

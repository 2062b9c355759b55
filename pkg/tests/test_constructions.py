from fractions import Fraction

import pytest
from hypothesis import HealthCheck, assume, given, settings, strategies as st

from conftest import X_STAR, databases, db, markets
from segguard.bounds import compute_bounds
from segguard.constructions import construct_cs_improving, construct_cs_reducing, qualifying_low_price
from segguard.errors import (
    IndexOutOfRange,
    InconsistentMarginals,
    LabelNotBinding,
    LabelNotQualifying,
    NotWorstCaseOptimal,
    TrivialDatabase,
)
from segguard.oracle import in_profile_polytope
from segguard.regulation import TRIVIAL_DATABASE, classify, validate_database
from segguard.segmentation import (
    check_consistent,
    evaluate,
    independent_segmentation,
    make_segmentation,
)

F = Fraction


def conditionals(seg):
    return [c.masses for c in seg.conditionals]


def test_independent_segmentation_reproduces_uniform_pricing():
    out = evaluate(X_STAR, independent_segmentation(X_STAR, db("1/2", "1/2")))
    assert out.prices == (1, 1)
    assert (out.cs, out.ps) == (F(1, 10), F(6, 5))
    assert out.w_alpha("1/2") == F(13, 20)


def test_inconsistent_segmentation_is_rejected():
    bad = make_segmentation(X_STAR, db("1/2", "1/2"), [["1/5", "3/5", "1/5"]] * 2)
    with pytest.raises(InconsistentMarginals) as info:
        check_consistent(X_STAR, bad)
    # residuals (-1/5, 1/10, 1/10): the largest miss is reported
    assert info.value.index == 0


def test_reducing_witness_on_worked_example():
    seg = construct_cs_reducing(X_STAR, db("3/10", "7/10"), 0)
    assert conditionals(seg) == [(F(1, 2), F(1, 6), F(1, 3)), (F(5, 14), F(9, 14), 0)]
    out = evaluate(X_STAR, seg)
    assert out.prices == (2, 1)
    assert out.cs == 0
    assert out.w_alpha("1/2") < F(13, 20)
    assert in_profile_polytope(X_STAR, seg, (2, 1))


def test_reducing_witness_with_partial_step():
    out = evaluate(X_STAR, construct_cs_reducing(X_STAR, db("1/5", "2/5", "2/5"), 0))
    assert out.cs == F(1, 30)


def test_improving_witness_on_worked_example():
    seg = construct_cs_improving(X_STAR, db("2/5", "3/5"), 0, epsilon=F(1, 5))
    assert conditionals(seg) == [(F(4, 5), F(1, 5), 0), (F(2, 15), F(7, 10), F(1, 6))]
    out = evaluate(X_STAR, seg)
    assert (out.cs, out.ps) == (F(9, 50), F(36, 25))


def test_improving_witness_default_epsilon_is_a_power_of_half():
    seg = construct_cs_improving(X_STAR, db("2/5", "3/5"), 0)
    assert conditionals(seg)[0] == (F(3, 4), F(1, 4), 0)
    out = evaluate(X_STAR, seg)
    assert (out.cs, out.ps) == (F(1, 5), F(7, 5))


def test_improving_witness_without_epsilon():
    out = evaluate(X_STAR, construct_cs_improving(X_STAR, db("1/2", "1/2"), 1))
    assert out.prices == (1, 0)
    assert (out.cs, out.ps) == (F(1, 5), F(3, 2))


def test_preconditions():
    with pytest.raises(TrivialDatabase):
        construct_cs_reducing(X_STAR, TRIVIAL_DATABASE, 0)
    with pytest.raises(LabelNotBinding):
        construct_cs_reducing(X_STAR, db("1/2", "1/2"), 0)
    with pytest.raises(NotWorstCaseOptimal):
        construct_cs_improving(X_STAR, db("3/10", "7/10"), 1)
    with pytest.raises(LabelNotQualifying):
        construct_cs_improving(X_STAR, TRIVIAL_DATABASE, 0)
    with pytest.raises(IndexOutOfRange):
        construct_cs_reducing(X_STAR, db("3/10", "7/10"), 2)
    with pytest.raises(ValueError):
        # a half share at the uniform price leaves it optimal through the tie
        construct_cs_improving(X_STAR, db("2/5", "3/5"), 0, epsilon=F(1, 2))


def test_qualifying_low_price():
    b = compute_bounds(X_STAR)
    assert qualifying_low_price(X_STAR, F(2, 5), b) == 0
    assert qualifying_low_price(X_STAR, F(4, 5), b) is None


@settings(max_examples=150, deadline=None)
@given(markets(), databases())
def test_reducing_witness_properties(market, database):
    b = compute_bounds(market)
    labels = [s for s, f in enumerate(database.masses) if f <= b.lambda_lower]
    assume(database.size > 1 and labels)
    s = labels[0]
    seg = construct_cs_reducing(market, database, s, b)
    check_consistent(market, seg)
    out = evaluate(market, seg)
    assert out.cs < b.u_star
    assert out.prices[s] > b.i_star
    assert all(p >= b.i_star for p in out.prices)
    assert out.w_alpha("1/2") < b.u_star / 2 + b.pi_star / 2
    assert in_profile_polytope(market, seg, out.prices)


@st.composite
def f2_instances(draw):
    """A market with non-empty F2 and a database drawn inside it."""
    market = draw(markets(thin_top=True))
    b = compute_bounds(market)
    assume(b.lambda_lower < F(1, 2) and b.lambda_lower < b.lambda_upper)
    hi = min(b.lambda_upper, 1 - b.lambda_lower)
    small = b.lambda_lower + (hi - b.lambda_lower) * F(draw(st.integers(1, 99)), 100)
    rest = 1 - small
    if draw(st.booleans()) and rest / 2 > b.lambda_lower:
        masses = [rest / 2, small, rest / 2]
    else:
        masses = [rest, small]
    return market, validate_database(masses)


@settings(max_examples=150, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])
@given(f2_instances())
def test_improving_witness_properties(instance):
    market, database = instance
    c = classify(market, database)
    assert c.in_f2
    b = c.bounds
    seg = construct_cs_improving(market, database, c.binding_label, b)
    out = evaluate(market, seg)
    assert out.cs > b.u_star and out.ps > b.pi_star
    assert out.prices[c.binding_label] < b.i_star
    assert all(p <= b.i_star for p in out.prices)
    assert in_profile_polytope(market, seg, out.prices)

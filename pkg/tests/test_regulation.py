from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import X_STAR, databases, db, markets
from segguard.bounds import compute_bounds, f2_nonempty
from segguard.errors import AlphaOutOfRange, InvalidDatabase, UniformPriceAtTop
from segguard.market import validate_market
from segguard.regulation import (
    TRIVIAL_DATABASE,
    classify,
    classify_weighted,
    policy_is_worst_case_optimal,
    validate_database,
)

F = Fraction


def test_worked_classification():
    c = classify(X_STAR, db("1/2", "1/2"))
    assert c.in_wc and c.in_f2 and c.undominated
    c = classify(X_STAR, db("3/10", "7/10"))
    assert not c.in_wc and not c.in_f2 and c.binding_label == 0
    c = classify(X_STAR, TRIVIAL_DATABASE)
    assert c.in_wc and not c.in_f2 and not c.undominated
    assert c.binding_label is None


def test_boundaries_are_strict():
    # label exactly at lambda_lower fails; just above passes
    assert not classify(X_STAR, db("3/10", "7/10")).in_wc
    assert classify(X_STAR, db("301/1000", "699/1000")).in_wc


def test_upper_boundary_is_strict():
    market = validate_market([1, 2, 3, 4], [0, "1/7", "5/7", "1/7"])
    b = compute_bounds(market)
    assert (b.lambda_lower, b.lambda_upper) == (F(2, 7), F(3, 7))
    t = b.lambda_upper
    at = classify(market, db(t, 1 - t))
    assert at.in_wc and not at.in_f2
    below = classify(market, db(t - F(1, 1000), 1 - t + F(1, 1000)))
    assert below.in_f2


def test_policy():
    assert policy_is_worst_case_optimal(X_STAR, [TRIVIAL_DATABASE]) == (True, None)
    assert policy_is_worst_case_optimal(X_STAR, [TRIVIAL_DATABASE, db("3/10", "7/10")]) == (False, 1)
    assert policy_is_worst_case_optimal(X_STAR, []) == (True, None)


def test_weighted_matches_consumer_surplus():
    assert classify_weighted(X_STAR, db("1/2", "1/2"), "1/2").in_wc
    assert not classify_weighted(X_STAR, db("3/10", "7/10"), "3/4").in_wc
    with pytest.raises(AlphaOutOfRange):
        classify_weighted(X_STAR, TRIVIAL_DATABASE, "1/4")


def test_database_validation():
    with pytest.raises(InvalidDatabase) as info:
        validate_database(["1/2", "0", "1/2"])
    assert info.value.index == 1
    with pytest.raises(InvalidDatabase):
        validate_database(["1/2", "1/3"])
    with pytest.raises(InvalidDatabase):
        validate_database([])


def test_top_price_market_propagates():
    with pytest.raises(UniformPriceAtTop):
        classify(validate_market([1, 2], ["1/4", "3/4"]), TRIVIAL_DATABASE)


@given(markets(), databases())
def test_classification_invariants(market, database):
    c = classify(market, database)
    b = c.bounds
    assert c.in_wc == (min(database.masses) > b.lambda_lower)
    assert c.in_f2 == (c.in_wc and min(database.masses) < b.lambda_upper)
    assert c.undominated == (c.in_f2 if f2_nonempty(b) else c.in_wc)
    if c.in_wc:
        assert database.size < 1 / b.lambda_lower
    if c.binding_label is not None:
        assert 0 <= c.binding_label < database.size


@given(markets(), databases(), st.randoms(use_true_random=False))
def test_label_permutation_invariance(market, database, rnd):
    perm = list(database.masses)
    rnd.shuffle(perm)
    a = classify(market, database)
    b = classify(market, validate_database(perm))
    assert (a.in_wc, a.in_f2, a.undominated) == (b.in_wc, b.in_f2, b.undominated)


@given(markets(), databases(), st.sampled_from([F(1, 2), F(2, 3), F(3, 4), F(1)]))
def test_weighted_classification_is_alpha_free(market, database, alpha):
    assert classify_weighted(market, database, alpha) == classify(market, database)

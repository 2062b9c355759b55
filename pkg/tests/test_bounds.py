from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import X_STAR, markets
from segguard.bounds import (
    compute_bounds,
    f2_nonempty,
    lower_bound_terms,
    max_label_count,
    nontrivial_wc_nonempty,
    upper_bound_terms,
)
from segguard.errors import UniformPriceAtTop
from segguard.extreme import greedy_decompose, mass_containing
from segguard.market import validate_market
from segguard.oracle import lower_threshold, upper_threshold

F = Fraction


def test_worked_bounds():
    b = compute_bounds(X_STAR)
    assert (b.lambda_lower, b.lambda_upper) == (F(3, 10), F(4, 5))
    assert (b.i_star, b.i_bar, b.i_low) == (1, 2, 0)
    assert (b.u_star, b.pi_star) == (F(1, 10), F(6, 5))
    assert lower_bound_terms(X_STAR) == [F(3, 10), F(11, 20)]
    assert upper_bound_terms(X_STAR) == [F(4, 5)]
    assert max_label_count(b) == 3
    assert nontrivial_wc_nonempty(b) and f2_nonempty(b)


def test_uniform_price_at_the_top_is_rejected():
    with pytest.raises(UniformPriceAtTop):
        compute_bounds(validate_market([1, 2], ["1/4", "3/4"]))
    # price 2 is optimal and nobody values the good at 3
    with pytest.raises(UniformPriceAtTop):
        compute_bounds(validate_market([1, 2, 3], ["1/4", "3/4", 0]))


def test_no_lower_price_gives_zero_upper_bound():
    market = validate_market([1, 2], ["3/5", "2/5"])
    b = compute_bounds(market)
    assert b.i_star == 0
    assert b.lambda_upper == 0
    assert not f2_nonempty(b)


@pytest.mark.parametrize("x3, expected", [(F(1, 20), F(3, 20)), (F(1, 100), F(3, 100)), (F(1, 10), F(3, 10))])
def test_linear_family(x3, expected):
    market = validate_market([1, 2, 3], [F(2, 5), F(3, 5) - x3, x3])
    b = compute_bounds(market)
    assert b.lambda_lower == expected
    assert market.grid[b.i_star] == 2


@settings(max_examples=150)
@given(markets(max_k=6))
def test_lower_bound_is_largest_segment_priced_above_uniform(market):
    assert compute_bounds(market).lambda_lower == lower_threshold(market)


@settings(max_examples=150)
@given(markets(max_k=6))
def test_upper_bound_is_largest_segment_priced_below_uniform(market):
    assert compute_bounds(market).lambda_upper == upper_threshold(market)


@given(markets(max_k=6))
def test_lower_bound_is_mass_of_extreme_markets_holding_top_price(market):
    b = compute_bounds(market)
    assert mass_containing(greedy_decompose(market), b.i_bar) == b.lambda_lower


@given(markets(max_k=6))
def test_witness_indices(market):
    b = compute_bounds(market)
    v, t = market.grid, market.tails
    # i_bar: highest revenue maximizer strictly above the uniform price
    above = [v[k] * t[k] for k in range(b.i_star + 1, market.size)]
    assert v[b.i_bar] * t[b.i_bar] == max(above)
    assert all(v[k] * t[k] < max(above) for k in range(b.i_bar + 1, market.size))
    # i_low: smallest index attaining the minimum, found by a direct scan
    terms = [v[b.i_bar] * t[b.i_bar] / v[j] + 1 - t[j] for j in range(b.i_star + 1)]
    assert b.i_low == min(range(len(terms)), key=lambda j: (terms[j], j))
    assert 0 < b.lambda_lower < 1
    # a lower price tying the uniform price gives lambda_upper = 1
    assert 0 <= b.lambda_upper <= 1


@given(markets(max_k=6), st.fractions(min_value=F(1, 10), max_value=10).filter(lambda c: c > 0))
def test_scale_invariance(market, c):
    a, b = compute_bounds(market), compute_bounds(market.scaled(c))
    assert (a.lambda_lower, a.lambda_upper, a.i_bar, a.i_low, a.i_star) == (
        b.lambda_lower, b.lambda_upper, b.i_bar, b.i_low, b.i_star)


@settings(max_examples=200)
@given(markets(max_k=6))
def test_upper_exceeds_lower_iff_uniform_price_is_not_a_minimizer(market):
    b = compute_bounds(market)
    terms = lower_bound_terms(market)
    assert (b.lambda_upper > b.lambda_lower) == (terms[b.i_star] != b.lambda_lower)


@given(markets(max_k=6))
def test_max_label_count(market):
    b = compute_bounds(market)
    n = max_label_count(b)
    assert n < 1 / b.lambda_lower <= n + 1

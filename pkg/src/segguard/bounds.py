"""Robust thresholds on label masses.

``lambda_lower``: a database never lowers consumer surplus below the uniform
pricing level exactly when every label carries strictly more than this mass.

``lambda_upper``: a database with that property can also *raise* consumer
surplus above the uniform level exactly when some label carries strictly less
than this mass.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil

from .errors import UniformPriceAtTop
from .market import Market, consumer_surplus, monopoly_price_index, producer_surplus

__all__ = [
    "Bounds",
    "compute_bounds",
    "lower_bound_terms",
    "upper_bound_terms",
    "max_label_count",
    "nontrivial_wc_nonempty",
    "f2_nonempty",
]


@dataclass(frozen=True)
class Bounds:
    lambda_lower: Fraction
    lambda_upper: Fraction
    i_bar: int
    i_low: int
    i_star: int
    u_star: Fraction
    pi_star: Fraction


def _top_index_above(market: Market, i_star: int) -> int:
    rev = [market.grid[k] * market.tails[k] for k in range(i_star + 1, market.size)]
    best = max(rev)
    return i_star + 1 + max(j for j, r in enumerate(rev) if r == best)


def lower_bound_terms(market: Market, i_star: int | None = None) -> list[Fraction]:
    """``[(v_bar * tail_bar) / v_j + 1 - tail_j for j <= i_star]``."""
    if i_star is None:
        i_star = monopoly_price_index(market)
    i_bar = _top_index_above(market, i_star)
    top = market.grid[i_bar] * market.tails[i_bar]
    return [top / market.grid[j] + 1 - market.tails[j] for j in range(i_star + 1)]


def upper_bound_terms(market: Market, i_star: int | None = None) -> list[Fraction]:
    """``[1 - (v_* tail_* - v_j tail_j) / (v_* - v_j) for j < i_star]``."""
    if i_star is None:
        i_star = monopoly_price_index(market)
    v, t = market.grid, market.tails
    r_star = v[i_star] * t[i_star]
    return [1 - (r_star - v[j] * t[j]) / (v[i_star] - v[j]) for j in range(i_star)]


def compute_bounds(market: Market) -> Bounds:
    """Both thresholds with their witness valuations.

    Raises :class:`UniformPriceAtTop` when no consumer values the good above
    the uniform monopoly price (then uniform pricing leaves no surplus).
    """
    i_star = monopoly_price_index(market)
    if i_star == market.size - 1 or market.tails[i_star + 1] == 0:
        raise UniformPriceAtTop(
            f"uniform monopoly price {market.grid[i_star]} is the highest valuation with positive mass"
        )
    i_bar = _top_index_above(market, i_star)
    lower_terms = lower_bound_terms(market, i_star)
    lam_lo = min(lower_terms)
    i_low = lower_terms.index(lam_lo)
    upper_terms = upper_bound_terms(market, i_star)
    lam_hi = max(upper_terms) if upper_terms else Fraction(0)
    return Bounds(
        lambda_lower=lam_lo,
        lambda_upper=lam_hi,
        i_bar=i_bar,
        i_low=i_low,
        i_star=i_star,
        u_star=consumer_surplus(market, i_star),
        pi_star=producer_surplus(market, i_star),
    )


def max_label_count(bounds: Bounds) -> int:
    """Largest number of labels a worst-case optimal database can have."""
    return ceil(1 / bounds.lambda_lower) - 1


def nontrivial_wc_nonempty(bounds: Bounds) -> bool:
    return bounds.lambda_lower < Fraction(1, 2)


def f2_nonempty(bounds: Bounds) -> bool:
    """Whether some worst-case optimal database can also strictly raise surplus."""
    return bounds.lambda_lower < Fraction(1, 2) and bounds.lambda_upper > bounds.lambda_lower

"""Adversarial and favourable segmentation witnesses.

``construct_cs_reducing`` builds, for a label holding at most ``lambda_lower``
of the consumers, a feasible segmentation under which consumer surplus falls
strictly below the uniform-pricing level. ``construct_cs_improving`` builds,
for a worst-case optimal database with a label below ``lambda_upper``, one
under which both consumer and producer surplus rise strictly.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .bounds import Bounds, compute_bounds, upper_bound_terms
from .errors import LabelNotBinding, LabelNotQualifying, NotWorstCaseOptimal, TrivialDatabase, IndexOutOfRange
from .extreme import greedy_decompose
from .market import Market, best_response
from .regulation import Database, classify
from .segmentation import Segmentation, evaluate

__all__ = ["construct_cs_reducing", "construct_cs_improving", "qualifying_low_price", "complete_evenly"]

MAX_HALVINGS = 64


def _check_label(database: Database, label: int) -> None:
    if not 0 <= label < database.size:
        raise IndexOutOfRange(label, database.size)


def complete_evenly(market: Market, database: Database, label: int, segment: Sequence[Fraction]) -> Segmentation:
    """Give ``segment`` to ``label`` and spread the remaining consumers of each
    valuation evenly over every other label."""
    f = database.masses[label]
    rest = tuple((x - f * m) / (1 - f) for x, m in zip(market.masses, segment))
    conditionals = []
    for s in range(database.size):
        masses = tuple(segment) if s == label else rest
        conditionals.append(Market(market.grid, masses))
    return Segmentation(database, tuple(conditionals))


def construct_cs_reducing(
    market: Market, database: Database, label: int, bounds: Bounds | None = None
) -> Segmentation:
    """Segment ``label`` as the mixture of the first greedy extreme markets.

    The mixture uses the extreme markets in decomposition order, taking each
    one whole until the label's mass is exhausted, so every extreme market used
    contains the valuation ``v_bar`` above the uniform price. The label is then
    charged at least ``v_bar`` and every other label at least the uniform price.
    """
    _check_label(database, label)
    if database.size == 1:
        raise TrivialDatabase("the single-label database admits only the aggregate market")
    if bounds is None:
        bounds = compute_bounds(market)
    f = database.masses[label]
    if f > bounds.lambda_lower:
        raise LabelNotBinding(f"label index {label} holds {f} > lambda_lower = {bounds.lambda_lower}")

    segment = [Fraction(0)] * market.size
    used = Fraction(0)
    for step in greedy_decompose(market).steps:
        weight = min(step.mass, f - used) / f
        for k, m in enumerate(step.extreme.masses):
            segment[k] += weight * m
        used += step.mass
        if used >= f:
            break

    seg = complete_evenly(market, database, label, segment)
    out = evaluate(market, seg)
    if not (
        out.prices[label] > bounds.i_star
        and all(p >= bounds.i_star for p in out.prices)
        and out.cs < bounds.u_star
    ):
        raise RuntimeError(f"surplus-reducing construction failed its postcondition: {out}")
    return seg


def qualifying_low_price(market: Market, mass: Fraction, bounds: Bounds) -> int | None:
    """Largest price index ``k < i_star`` whose upper-bound term exceeds ``mass``."""
    terms = upper_bound_terms(market, bounds.i_star)
    ks = [k for k, t in enumerate(terms) if t > mass]
    return ks[-1] if ks else None


def _fill(order: Sequence[int], caps: Sequence[Fraction], total: Fraction, out: list[Fraction]) -> Fraction:
    """Greedily place ``total`` along ``order`` up to ``caps``; returns what is left."""
    for k in order:
        if total <= 0:
            break
        put = min(caps[k], total)
        out[k] = put
        total -= put
    return total


def _improving_segment(market: Market, f: Fraction, i_star: int, epsilon: Fraction | None) -> list[Fraction] | None:
    caps = [x / f for x in market.masses]
    seg = [Fraction(0)] * market.size
    high = list(range(i_star, market.size))
    if epsilon is None:
        low_total = sum(caps[:i_star])
        for k in range(i_star):
            seg[k] = caps[k]
        # keep the lower high valuations whole; trim from the top
        left = _fill(high, caps, 1 - low_total, seg)
    else:
        left = _fill(range(i_star - 1, -1, -1), caps, 1 - epsilon, seg)
        left += _fill(high, caps, epsilon, seg)
    if left != 0:
        return None
    return seg


def construct_cs_improving(
    market: Market,
    database: Database,
    label: int,
    bounds: Bounds | None = None,
    epsilon: Fraction | None = None,
) -> Segmentation:
    """Segment ``label`` so that a price below the uniform price is optimal there.

    The label receives every consumer valuing below the uniform price (scaled
    by its mass) plus just enough consumers at or above it, kept at the lowest
    such valuations. When the low valuations alone would overfill the segment,
    it instead receives low-valuation consumers (highest first) up to
    ``1 - epsilon`` and a share ``epsilon`` at or above the uniform price, with
    ``epsilon`` the largest power of 1/2 that makes a lower price strictly
    optimal, unless ``epsilon`` is given. Other labels share the rest evenly.
    """
    _check_label(database, label)
    if bounds is None:
        bounds = compute_bounds(market)
    cls = classify(market, database, bounds)
    if not cls.in_wc:
        raise NotWorstCaseOptimal(f"label index {cls.binding_label} holds at most lambda_lower = {bounds.lambda_lower}")
    f = database.masses[label]
    if f >= bounds.lambda_upper:
        raise LabelNotQualifying(f"label index {label} holds {f} >= lambda_upper = {bounds.lambda_upper}")

    i_star = bounds.i_star
    low_share = sum(market.masses[:i_star]) / f

    def acceptable(seg) -> bool:
        return seg is not None and best_response(market.grid, seg) < i_star

    if low_share < 1 and epsilon is None:
        segment = _improving_segment(market, f, i_star, None)
        if not acceptable(segment):
            raise RuntimeError("surplus-improving segment does not move the price below the uniform price")
    elif epsilon is not None:
        epsilon = Fraction(epsilon)
        if not 0 < epsilon < 1:
            raise ValueError(f"epsilon={epsilon} outside (0, 1)")
        segment = _improving_segment(market, f, i_star, epsilon)
        if not acceptable(segment):
            raise ValueError(f"epsilon={epsilon} does not make a price below the uniform price optimal")
    else:
        segment = None
        for m in range(1, MAX_HALVINGS + 1):
            candidate = _improving_segment(market, f, i_star, Fraction(1, 2**m))
            if acceptable(candidate):
                segment = candidate
                break
        if segment is None:
            raise RuntimeError(f"no epsilon down to 2^-{MAX_HALVINGS} works")

    seg = complete_evenly(market, database, label, segment)
    out = evaluate(market, seg)
    if not (
        out.prices[label] < i_star
        and all(p <= i_star for p in out.prices)
        and out.cs > bounds.u_star
        and out.ps > bounds.pi_star
    ):
        raise RuntimeError(f"surplus-improving construction failed its postcondition: {out}")
    return seg
